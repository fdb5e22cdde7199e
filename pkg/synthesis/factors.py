"""Spectral factors and the causal/anticausal split of the regret target.

    Δ(z)Δ*(z^-*) = I + H(z)H*(z^-*)
    ∇*(z^-*)∇(z) = gamma^-2 (I + gamma^-2 L(z)(I + H*H)^-1 L*(z^-*))

Both factors and their inverses are causal and stable. Inverses are realized
around the stable closed loops (F_P for Δ^-1, F_Q for ∇) rather than by
inverting transfer matrices pointwise.
"""

from collections.abc import Iterable

import numpy as np

from linalg_core import RiccatiSolution
from state_space import LtiFilter, StateSpaceModel, eval_transfer_batch, series

from .nehari import anticausal_gains, anticausal_response_batch
from .riccati_chain import GammaWorkspace, riccati_p


def delta_realizations(
    model: StateSpaceModel, kalman: RiccatiSolution
) -> tuple[LtiFilter, LtiFilter]:
    """(Δ, Δ^-1) from the Kalman Riccati solution."""
    K_P, Re_sqrt, Re_inv_sqrt = kalman.gain, kalman.R_sqrt, kalman.R_inv_sqrt
    delta = LtiFilter(model.F, K_P @ Re_sqrt, model.H, Re_sqrt, name="delta")
    delta_inv = LtiFilter(
        kalman.closed_loop, K_P, -Re_inv_sqrt @ model.H, Re_inv_sqrt, name="delta_inv"
    )
    return delta, delta_inv


def nabla_realizations(
    model: StateSpaceModel, ws: GammaWorkspace
) -> tuple[LtiFilter, LtiFilter]:
    """(∇, ∇^-1) at the workspace's gamma."""
    nabla = LtiFilter(
        ws.F_Q, ws.K_Q, -ws.R_Q_inv_sqrt @ model.L, ws.R_Q_inv_sqrt, name="nabla"
    )
    nabla_inv = LtiFilter(ws.F_W, ws.K_Q @ ws.R_Q_sqrt, model.L, ws.R_Q_sqrt, name="nabla_inv")
    return nabla, nabla_inv


def causal_plant_part(model: StateSpaceModel, ws: GammaWorkspace) -> LtiFilter:
    """First line of the causal part, ∇ L z(zI - F)^-1 P B_T.

    Equal to ∇ K_H2 Δ. Carries the plant poles, so it is unbounded on the
    circle for marginally stable plants.
    """
    B_T, _ = anticausal_gains(model, ws)
    inner = LtiFilter(
        model.F, model.F @ ws.P @ B_T, model.L, model.L @ ws.P @ B_T, name="plant_part"
    )
    nabla, _ = nabla_realizations(model, ws)
    return series(inner, nabla, name="causal_plant")


def causal_correction(model: StateSpaceModel, ws: GammaWorkspace) -> LtiFilter:
    """Second line of the causal part, -R_Q^-1/2 L z(zI - F_Q)^-1 U B_T."""
    B_T, _ = anticausal_gains(model, ws)
    out = -ws.R_Q_inv_sqrt @ model.L
    return LtiFilter(ws.F_Q, ws.F_Q @ ws.U @ B_T, out, out @ ws.U @ B_T, name="causal_correction")


def delta_factor_batch(
    model: StateSpaceModel,
    omegas: float | Iterable[float],
    kalman: RiccatiSolution | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Δ(e^{jw}) and Δ^-1(e^{jw}), each of shape (N, m, m)."""
    kalman = kalman if kalman is not None else riccati_p(model)
    delta, delta_inv = delta_realizations(model, kalman)
    return eval_transfer_batch(delta, omegas), eval_transfer_batch(delta_inv, omegas)


def delta_factor(
    model: StateSpaceModel, omega: float, kalman: RiccatiSolution | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """(Δ(e^{jw}), Δ^-1(e^{jw})).

    Example:
        >>> d, d_inv = delta_factor(scalar_model(), 0.0)
        >>> abs(complex(d[0, 0] * d_inv[0, 0]) - 1.0) < 1e-12
        True
    """
    delta, delta_inv = delta_factor_batch(model, omega, kalman)
    return delta[0], delta_inv[0]


def nabla_factor_batch(
    model: StateSpaceModel, ws: GammaWorkspace, omegas: float | Iterable[float]
) -> tuple[np.ndarray, np.ndarray]:
    """∇(e^{jw}) and ∇^-1(e^{jw}), each of shape (N, p, p)."""
    nabla, nabla_inv = nabla_realizations(model, ws)
    return eval_transfer_batch(nabla, omegas), eval_transfer_batch(nabla_inv, omegas)


def nabla_factor(
    model: StateSpaceModel, ws: GammaWorkspace, omega: float
) -> tuple[np.ndarray, np.ndarray]:
    """(∇(e^{jw}), ∇^-1(e^{jw})) at the workspace's gamma."""
    nabla, nabla_inv = nabla_factor_batch(model, ws, omega)
    return nabla[0], nabla_inv[0]


def causal_anticausal_split_batch(
    model: StateSpaceModel, ws: GammaWorkspace, omegas: float | Iterable[float]
) -> tuple[np.ndarray, np.ndarray]:
    """T(e^{jw}) and S(e^{jw}) with T + S = ∇ L H* Δ^-*, shapes (N, p, m)."""
    T = anticausal_response_batch(model, ws, omegas)
    S = eval_transfer_batch(causal_plant_part(model, ws), omegas) + eval_transfer_batch(
        causal_correction(model, ws), omegas
    )
    return T, S


def causal_anticausal_split(
    model: StateSpaceModel, ws: GammaWorkspace, omega: float
) -> tuple[np.ndarray, np.ndarray]:
    """(T(e^{jw}), S(e^{jw})): strictly anticausal and causal parts of the target."""
    T, S = causal_anticausal_split_batch(model, ws, omega)
    return T[0], S[0]
