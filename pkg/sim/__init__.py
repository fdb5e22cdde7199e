"""Time-domain experiments: disturbance traces and running error energy."""

from .disturbance import DISTURBANCE_KINDS, DisturbanceSpec, generate, worst_case_disturbance
from .harness import (
    SimResult,
    burn_in_steps,
    energy_gain,
    export_sim,
    plateau,
    run_trace,
    sim_text,
    simulate,
)

__all__ = [
    "DISTURBANCE_KINDS",
    "DisturbanceSpec",
    "generate",
    "worst_case_disturbance",
    "SimResult",
    "simulate",
    "run_trace",
    "burn_in_steps",
    "plateau",
    "energy_gain",
    "sim_text",
    "export_sim",
]
