"""Regret-optimal estimator synthesis.

Example:
    from model_file import scalar_model
    from synthesis import synthesize

    result = synthesize(scalar_model())
    result.regret        # about 0.38
    result.filter.dim    # 3
"""

from .bisection import GammaSearch, check_monotone, find_gamma_star, kalman_regret
from .existence import ExistenceCheck, existence_check, hankel_statistic
from .factors import (
    causal_anticausal_split,
    causal_anticausal_split_batch,
    causal_correction,
    causal_plant_part,
    delta_factor,
    delta_factor_batch,
    delta_realizations,
    nabla_factor,
    nabla_factor_batch,
    nabla_realizations,
)
from .filters import (
    assemble_regret_filter,
    kalman_filter,
    noncausal_error_operator_batch,
    noncausal_response,
    noncausal_response_batch,
    regret_filter_response,
    regret_filter_response_batch,
    zero_regret_filter,
)
from .nehari import (
    NehariConstants,
    anticausal_mirror,
    anticausal_response_batch,
    nehari_constants,
    nehari_filter,
    nehari_gap_batch,
)
from .pipeline import SynthesisResult, synthesize
from .riccati_chain import (
    GammaWorkspace,
    build_workspace,
    lyapunov_u,
    pi_gramian,
    riccati_p,
    riccati_q,
    riccati_w,
    z_gramian,
)

__all__ = [
    "GammaWorkspace",
    "build_workspace",
    "riccati_p",
    "riccati_w",
    "riccati_q",
    "lyapunov_u",
    "pi_gramian",
    "z_gramian",
    "ExistenceCheck",
    "existence_check",
    "hankel_statistic",
    "GammaSearch",
    "check_monotone",
    "find_gamma_star",
    "kalman_regret",
    "NehariConstants",
    "nehari_constants",
    "nehari_filter",
    "nehari_gap_batch",
    "anticausal_mirror",
    "anticausal_response_batch",
    "delta_realizations",
    "nabla_realizations",
    "causal_plant_part",
    "causal_correction",
    "delta_factor",
    "delta_factor_batch",
    "nabla_factor",
    "nabla_factor_batch",
    "causal_anticausal_split",
    "causal_anticausal_split_batch",
    "kalman_filter",
    "noncausal_response",
    "noncausal_response_batch",
    "noncausal_error_operator_batch",
    "assemble_regret_filter",
    "regret_filter_response",
    "regret_filter_response_batch",
    "zero_regret_filter",
    "SynthesisResult",
    "synthesize",
]
