"""Configuration module for regret-filter.

This module provides the numerical settings shared by the solvers, the
synthesis pipeline, the analysis module and the simulation harness.
"""

from pathlib import Path

from .settings import (
    RICCATI_METHODS,
    BisectionSettings,
    GridSettings,
    ReproductionSettings,
    Settings,
    SimulationSettings,
    SolverSettings,
    get_default_settings,
    load_settings,
    set_default_settings,
    settings_from_dict,
)

DEFAULT_CONFIG_PATH = Path(__file__).parent / "default.yaml"

__all__ = [
    "RICCATI_METHODS",
    "DEFAULT_CONFIG_PATH",
    "SolverSettings",
    "BisectionSettings",
    "GridSettings",
    "SimulationSettings",
    "ReproductionSettings",
    "Settings",
    "get_default_settings",
    "set_default_settings",
    "load_settings",
    "settings_from_dict",
]
