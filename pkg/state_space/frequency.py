"""Frequency evaluation of realizations on the unit circle.

Each resolvent is LU-solved per frequency (batched through numpy), so Jordan
blocks in A need no special handling.
"""

from collections.abc import Iterable

import numpy as np

from exceptions import DimensionMismatch, SingularResolvent

from .systems import LtiFilter, StateSpaceModel

# Resolvent condition beyond which z is treated as a pole
_RESOLVENT_COND_LIMIT = 1e14
_DEFAULT_CHUNK = 4096


def _as_omegas(omegas: float | Iterable[float]) -> np.ndarray:
    return np.atleast_1d(np.asarray(omegas, dtype=float))


def _resolvent_apply(A: np.ndarray, X: np.ndarray, z: np.ndarray) -> np.ndarray:
    """(z_k I - A)^-1 X for every z_k, shape (N, d, cols)."""
    d = A.shape[0]
    pencil = z[:, None, None] * np.eye(d)[None, :, :] - A[None, :, :]
    rhs = np.broadcast_to(X, (z.size,) + X.shape)
    try:
        out = np.linalg.solve(pencil, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularResolvent("zI - A is singular on the unit circle") from e
    if not np.all(np.isfinite(out)):
        raise SingularResolvent("zI - A is singular on the unit circle")
    # Exactly singular pencils can slip through LU with huge but finite entries
    if d <= 16:
        cond = np.linalg.cond(pencil)
        if np.any(cond > _RESOLVENT_COND_LIMIT):
            worst = int(np.argmax(cond))
            raise SingularResolvent(
                "zI - A is singular on the unit circle",
                f"omega = {float(np.angle(z[worst])) % (2 * np.pi):.12g}",
            )
    return out


def eval_transfer_batch(
    filt: LtiFilter, omegas: float | Iterable[float], chunk: int = _DEFAULT_CHUNK
) -> np.ndarray:
    """D + C (e^{jw} I - A)^-1 B at every omega, shape (N, p, m)."""
    w = _as_omegas(omegas)
    p, m = filt.D.shape
    out = np.empty((w.size, p, m), dtype=complex)
    if filt.dim == 0:
        out[:] = filt.D
        return out
    for start in range(0, w.size, chunk):
        z = np.exp(1j * w[start : start + chunk])
        out[start : start + chunk] = filt.D + filt.C @ _resolvent_apply(filt.A, filt.B, z)
    return out


def eval_transfer(filt: LtiFilter, omega: float) -> np.ndarray:
    """D + C (e^{jw} I - A)^-1 B as a complex p x m matrix.

    Raises:
        SingularResolvent: e^{jw} is an eigenvalue of A.

    Example:
        >>> f = LtiFilter(0.9, 1.0, 1.0, 0.0)
        >>> complex(eval_transfer(f, 0.0)[0, 0]).real
        10.000000000000002
    """
    return eval_transfer_batch(filt, omega)[0]


def eval_adjoint_batch(
    filt: LtiFilter, omegas: float | Iterable[float], chunk: int = _DEFAULT_CHUNK
) -> np.ndarray:
    """Adjoint channel D* + B*(z^-1 I - A*)^-1 C* at z = e^{jw}, shape (N, m, p)."""
    w = _as_omegas(omegas)
    p, m = filt.D.shape
    out = np.empty((w.size, m, p), dtype=complex)
    Dh = filt.D.conj().T
    if filt.dim == 0:
        out[:] = Dh
        return out
    Ah = filt.A.conj().T
    for start in range(0, w.size, chunk):
        z_inv = np.exp(-1j * w[start : start + chunk])
        out[start : start + chunk] = Dh + filt.B.conj().T @ _resolvent_apply(
            Ah, filt.C.conj().T, z_inv
        )
    return out


def eval_adjoint(filt: LtiFilter, omega: float) -> np.ndarray:
    """H*(z^{-*}) at z = e^{jw}; equals eval_transfer(filt, omega) conjugate-transposed."""
    return eval_adjoint_batch(filt, omega)[0]


def eval_plant_channels_batch(
    model: StateSpaceModel, omegas: float | Iterable[float], chunk: int = _DEFAULT_CHUNK
) -> tuple[np.ndarray, np.ndarray]:
    """H(e^{jw}) and L(e^{jw}) sharing one resolvent solve, shapes (N, m, q), (N, p, q)."""
    w = _as_omegas(omegas)
    H = np.empty((w.size, model.m, model.q), dtype=complex)
    L = np.empty((w.size, model.p, model.q), dtype=complex)
    for start in range(0, w.size, chunk):
        z = np.exp(1j * w[start : start + chunk])
        X = _resolvent_apply(model.F, model.G, z)
        H[start : start + chunk] = model.H @ X
        L[start : start + chunk] = model.L @ X
    return H, L


def eval_plant_channels(model: StateSpaceModel, omega: float) -> tuple[np.ndarray, np.ndarray]:
    """(H(e^{jw}), L(e^{jw})) of the plant."""
    H, L = eval_plant_channels_batch(model, omega)
    return H[0], L[0]


def check_filter_dims(model: StateSpaceModel, filt: LtiFilter) -> None:
    """A filter for this plant maps m observations to p estimates."""
    if filt.n_inputs != model.m or filt.n_outputs != model.p:
        raise DimensionMismatch(
            f"Filter '{filt.name}' is {filt.n_outputs} x {filt.n_inputs}",
            f"model needs {model.p} x {model.m}",
        )


def error_operator_sample(model: StateSpaceModel, filt: LtiFilter, omega: float) -> np.ndarray:
    """T_K(e^{jw}) = [L - K H, -K], a complex p x (q + m) matrix.

    Raises:
        DimensionMismatch: Filter does not map m observations to p estimates.
    """
    from .compose import error_system

    return eval_transfer(error_system(model, filt), omega)
