"""Anticausal part of the regret problem and its optimal causal approximant.

At level gamma the target ∇ L H* Δ^-* splits into a strictly anticausal part

    T(z) = C_T (z^-1 I - F_P*)^-1 B_T,   C_T = R_Q^-1/2 L (P - U) F_P*,
                                           B_T = H* R_e^-*/2

plus a causal remainder. The best causal approximant of T in operator norm is

    K_N(z) = Pi~ z (zI - F_N)^-1 G_N

with G_N = (I - F_P Z F_P* Pi)^-1 F_P Z B_T, F_N = F_P - G_N R_e^-1/2 H and
Pi~ = C_T Pi. The approximation error ||K_N - T|| is the Hankel statistic,
at most 1 whenever the existence test passes.
"""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from exceptions import SingularPencil
from linalg_core import spectral_radius
from state_space import LtiFilter, StateSpaceModel, eval_adjoint_batch, eval_transfer_batch

from .riccati_chain import GammaWorkspace

_PENCIL_COND_LIMIT = 1e12


@dataclass(frozen=True)
class NehariConstants:
    """Constants of the causal approximant K_N.

    Attributes:
        G_N: n x m input matrix.
        F_N: n x n state matrix, strictly stable.
        Pi_tilde: p x n output map.
    """

    G_N: np.ndarray
    F_N: np.ndarray
    Pi_tilde: np.ndarray

    def to_dict(self) -> dict:
        return {"G_N": self.G_N, "F_N": self.F_N, "Pi_tilde": self.Pi_tilde}


def anticausal_gains(model: StateSpaceModel, ws: GammaWorkspace) -> tuple[np.ndarray, np.ndarray]:
    """(B_T, C_T) of the anticausal part at the workspace's gamma."""
    B_T = model.H.T @ ws.Re_inv_sqrt.T
    C_T = ws.R_Q_inv_sqrt @ model.L @ (ws.P - ws.U) @ ws.F_P.T
    return B_T, C_T


def anticausal_mirror(model: StateSpaceModel, ws: GammaWorkspace) -> LtiFilter:
    """Stable system whose adjoint is T(z); evaluate T with eval_adjoint."""
    B_T, C_T = anticausal_gains(model, ws)
    return LtiFilter(
        ws.F_P, C_T.T, B_T.T, np.zeros((model.m, model.p)), name="anticausal"
    )


def anticausal_response_batch(
    model: StateSpaceModel, ws: GammaWorkspace, omegas: float | Iterable[float]
) -> np.ndarray:
    """T(e^{jw}) on a batch of frequencies, shape (N, p, m)."""
    return eval_adjoint_batch(anticausal_mirror(model, ws), omegas)


def nehari_constants(model: StateSpaceModel, ws: GammaWorkspace) -> NehariConstants:
    """Solve for the causal approximant of T at the workspace's gamma.

    Raises:
        SingularPencil: I - F_P Z F_P* Pi is numerically singular, or the
            resulting F_N is not strictly stable. Both happen when the Hankel
            statistic sits at exactly 1.
    """
    n = model.n
    B_T, C_T = anticausal_gains(model, ws)
    pencil = np.eye(n) - ws.F_P @ ws.Z @ ws.F_P.T @ ws.Pi
    cond = np.linalg.cond(pencil)
    if not np.isfinite(cond) or cond > _PENCIL_COND_LIMIT:
        raise SingularPencil(
            "I - F_P Z F_P* Pi is singular", f"gamma = {ws.gamma:.12g}, cond = {cond:.3e}"
        )
    G_N = np.linalg.solve(pencil, ws.F_P @ ws.Z @ B_T)
    F_N = ws.F_P - G_N @ ws.Re_inv_sqrt @ model.H
    rho = spectral_radius(F_N)
    if rho >= 1.0:
        raise SingularPencil(
            "F_N is not strictly stable", f"gamma = {ws.gamma:.12g}, rho = {rho:.12g}"
        )
    return NehariConstants(G_N=G_N, F_N=F_N, Pi_tilde=C_T @ ws.Pi)


def nehari_filter(nehari: NehariConstants) -> LtiFilter:
    """K_N(z) = Pi~ z (zI - F_N)^-1 G_N as a proper realization."""
    return LtiFilter(
        nehari.F_N,
        nehari.G_N,
        nehari.Pi_tilde @ nehari.F_N,
        nehari.Pi_tilde @ nehari.G_N,
        name="nehari",
    )


def nehari_gap_batch(
    model: StateSpaceModel,
    ws: GammaWorkspace,
    nehari: NehariConstants,
    omegas: float | Iterable[float],
) -> np.ndarray:
    """Largest singular value of K_N - T at each frequency."""
    diff = eval_transfer_batch(nehari_filter(nehari), omegas) - anticausal_response_batch(
        model, ws, omegas
    )
    return np.linalg.svd(diff, compute_uv=False)[:, 0]
