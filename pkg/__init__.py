"""
regret-filter

Regret-optimal causal estimation for linear time-invariant state-space plants.
Synthesizes the filter whose worst-case excess error energy over the noncausal
estimator is smallest, and compares it with the Kalman and H-infinity filters.
"""

__version__ = "0.1.0"

# Re-export key classes and functions for easier access
from analysis import FrequencyGrid, NormReport, evaluate
from baselines import hinf_optimal
from checkers import BaseChecker, CheckerRegistry, CheckerReport, run_verification
from config import Settings, load_settings
from model_file import ModelFile, load_model
from state_space import LtiFilter, StateSpaceModel
from synthesis import SynthesisResult, find_gamma_star, kalman_filter, synthesize

__all__ = [
    "__version__",
    # Core
    "StateSpaceModel",
    "LtiFilter",
    "ModelFile",
    "load_model",
    # Synthesis
    "SynthesisResult",
    "synthesize",
    "find_gamma_star",
    "kalman_filter",
    "hinf_optimal",
    # Analysis
    "FrequencyGrid",
    "NormReport",
    "evaluate",
    # Checkers
    "BaseChecker",
    "CheckerRegistry",
    "CheckerReport",
    "run_verification",
    # Config
    "Settings",
    "load_settings",
]
