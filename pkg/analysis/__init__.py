"""Frequency-domain performance of estimators.

Example:
    from analysis import FrequencyGrid, FrequencyMatched, evaluate

    report = evaluate(model, FrequencyMatched(), FrequencyGrid(2048))
    report.frobenius_sq, report.operator_sq, report.regret
"""

from .causality import anticausal_fraction, causal_fraction, tap_energies
from .error_operator import (
    Estimator,
    FrequencyMatched,
    error_operator_batch,
    gram_batch,
    operator_curve,
    regret_curve,
)
from .export import CURVE_COLUMNS, curves_text, export_curves, read_curves
from .grid import MIN_GRID_COUNT, FrequencyGrid
from .norms import NormReport, evaluate, frobenius_norm_sq, operator_norm_sq, regret_norm

__all__ = [
    "FrequencyGrid",
    "MIN_GRID_COUNT",
    "Estimator",
    "FrequencyMatched",
    "error_operator_batch",
    "gram_batch",
    "operator_curve",
    "regret_curve",
    "frobenius_norm_sq",
    "operator_norm_sq",
    "regret_norm",
    "NormReport",
    "evaluate",
    "CURVE_COLUMNS",
    "curves_text",
    "export_curves",
    "read_curves",
    "tap_energies",
    "causal_fraction",
    "anticausal_fraction",
]
