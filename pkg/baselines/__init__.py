"""Comparison estimators: the central H-infinity filter."""

from .hinf import HinfRiccati, hinf_filter, hinf_optimal, hinf_riccati

__all__ = ["HinfRiccati", "hinf_riccati", "hinf_filter", "hinf_optimal"]
