"""Estimators built from the Riccati chain.

kalman_filter               causal H2 optimum, dimension n
noncausal_response          clairvoyant optimum K0 = L H* (I + H H*)^-1, pointwise only
assemble_regret_filter      regret-optimal estimator, dimension 3n
regret_filter_response      the same estimator evaluated factor by factor
"""

from collections.abc import Iterable

import numpy as np

from config import Settings
from linalg_core import RiccatiSolution
from state_space import LtiFilter, StateSpaceModel, eval_plant_channels_batch, eval_transfer_batch

from .factors import causal_correction, delta_realizations, nabla_realizations
from .nehari import NehariConstants, nehari_filter
from .riccati_chain import GammaWorkspace, riccati_p


def kalman_filter(
    model: StateSpaceModel,
    kalman: RiccatiSolution | None = None,
    settings: Settings | None = None,
) -> LtiFilter:
    """Filtered (a posteriori) Kalman estimator of s = L x.

    Realization (F_P, K_P, L(I - P H* R_e^-1 H), L P H* R_e^-1).
    """
    kalman = kalman if kalman is not None else riccati_p(model, settings)
    P, K_P = kalman.X, kalman.gain
    M = np.linalg.solve(kalman.R, model.H @ P).T  # P H* R_e^-1
    return LtiFilter(
        kalman.closed_loop,
        K_P,
        model.L @ (np.eye(model.n) - M @ model.H),
        model.L @ M,
        name="h2",
    )


def noncausal_response_batch(
    model: StateSpaceModel, omegas: float | Iterable[float]
) -> np.ndarray:
    """K0(e^{jw}) = L H* (I + H H*)^-1 at each frequency, shape (N, p, m)."""
    H, L = eval_plant_channels_batch(model, omegas)
    Hh = np.conj(np.swapaxes(H, -1, -2))
    Lh = np.conj(np.swapaxes(L, -1, -2))
    gram = np.eye(model.m) + H @ Hh
    # (I + H H*) is Hermitian, so K0* = (I + H H*)^-1 H L*
    return np.conj(np.swapaxes(np.linalg.solve(gram, H @ Lh), -1, -2))


def noncausal_response(model: StateSpaceModel, omega: float) -> np.ndarray:
    """K0(e^{jw}) as a complex p x m matrix.

    Example:
        >>> k0 = noncausal_response(scalar_model(), 0.0)
        >>> round(complex(k0[0, 0]).real, 6)
        0.990099
    """
    return noncausal_response_batch(model, omega)[0]


def noncausal_error_operator_batch(
    model: StateSpaceModel, omegas: float | Iterable[float]
) -> np.ndarray:
    """T_K0 = [L (I + H*H)^-1, -L (I + H*H)^-1 H*], shape (N, p, q + m).

    Stays bounded where the plant resolvent grows, since L and H enter through
    a damped Gram matrix.
    """
    H, L = eval_plant_channels_batch(model, omegas)
    Hh = np.conj(np.swapaxes(H, -1, -2))
    Lh = np.conj(np.swapaxes(L, -1, -2))
    gram = np.eye(model.q) + Hh @ H
    left = np.conj(np.swapaxes(np.linalg.solve(gram, Lh), -1, -2))
    return np.concatenate([left, -left @ Hh], axis=-1)


def zero_regret_filter(model: StateSpaceModel) -> LtiFilter:
    """Zero estimator with the 3n state layout, returned for degenerate plants."""
    return LtiFilter.zero(model.p, model.m, dim=3 * model.n, name="regret_opt")


def assemble_regret_filter(
    model: StateSpaceModel, ws: GammaWorkspace, nehari: NehariConstants
) -> LtiFilter:
    """Regret-optimal estimator as one realization of dimension 3n.

    State blocks follow F_P, F_N and F_W; A is block lower triangular.
    """
    n, L, H = model.n, model.L, model.H
    P, U = ws.P, ws.U
    Re_inv_sqrt = ws.Re_inv_sqrt
    Re_inv = Re_inv_sqrt.T @ Re_inv_sqrt
    Rq_sqrt = ws.R_Q_sqrt
    F_N, Pi_t = nehari.F_N, nehari.Pi_tilde
    GNR = nehari.G_N @ Re_inv_sqrt
    KQR = ws.K_Q @ Rq_sqrt
    UHR = U @ H.T @ Re_inv

    zeros = np.zeros((n, n))
    A = np.block(
        [
            [ws.F_P, zeros, zeros],
            [-GNR @ H, F_N, zeros],
            [ws.F_W @ UHR @ H - KQR @ Pi_t @ GNR @ H, KQR @ Pi_t @ F_N, ws.F_W],
        ]
    )
    B = np.vstack([ws.K_P, GNR, KQR @ Pi_t @ GNR - ws.F_W @ UHR])
    C = np.hstack(
        [
            L - L @ (P - U) @ H.T @ Re_inv @ H - Rq_sqrt @ Pi_t @ GNR @ H,
            Rq_sqrt @ Pi_t @ F_N,
            L,
        ]
    )
    D = L @ (P - U) @ H.T @ Re_inv + Rq_sqrt @ Pi_t @ GNR
    return LtiFilter(A, B, C, D, name="regret_opt")


def regret_filter_response_batch(
    model: StateSpaceModel,
    ws: GammaWorkspace,
    nehari: NehariConstants,
    omegas: float | Iterable[float],
) -> np.ndarray:
    """∇^-1 (K_N + S_c) Δ^-1 + K_H2 at each frequency, shape (N, p, m).

    S_c is the U-dependent line of the causal part. Each factor is evaluated
    separately, so this is independent of the 3n assembly.
    """
    _, delta_inv = delta_realizations(model, ws.kalman)
    _, nabla_inv = nabla_realizations(model, ws)
    middle = eval_transfer_batch(nehari_filter(nehari), omegas) + eval_transfer_batch(
        causal_correction(model, ws), omegas
    )
    return eval_transfer_batch(nabla_inv, omegas) @ middle @ eval_transfer_batch(
        delta_inv, omegas
    ) + eval_transfer_batch(kalman_filter(model, ws.kalman), omegas)


def regret_filter_response(
    model: StateSpaceModel, ws: GammaWorkspace, nehari: NehariConstants, omega: float
) -> np.ndarray:
    return regret_filter_response_batch(model, ws, nehari, omega)[0]
