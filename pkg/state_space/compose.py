"""Realization algebra: cascades, sums, inverses and the error system T_K."""

import numpy as np
from scipy import linalg

from exceptions import DimensionMismatch, ValidationError

from .frequency import check_filter_dims
from .systems import LtiFilter, StateSpaceModel

# Relative size below which L - D H - C X counts as zero
_UNBIASED_TOL = 1e-9
# Minimum eigenvalue separation for the Sylvester solve X F - A X = B H
_SEPARATION_TOL = 1e-8


def series(first: LtiFilter, second: LtiFilter, name: str | None = None) -> LtiFilter:
    """Cascade: output of `first` feeds `second`, transfer second(z) @ first(z)."""
    if second.n_inputs != first.n_outputs:
        raise DimensionMismatch(
            "Cascade dimensions differ",
            f"{first.name} outputs {first.n_outputs}, {second.name} takes {second.n_inputs}",
        )
    d1, d2 = first.dim, second.dim
    A = np.block(
        [
            [first.A, np.zeros((d1, d2))],
            [second.B @ first.C, second.A],
        ]
    )
    B = np.vstack([first.B, second.B @ first.D])
    C = np.hstack([second.D @ first.C, second.C])
    D = second.D @ first.D
    return LtiFilter(A, B, C, D, name=name or f"{second.name}*{first.name}")


def parallel(first: LtiFilter, second: LtiFilter, name: str | None = None) -> LtiFilter:
    """Sum of two filters with the same input and output sizes."""
    if first.D.shape != second.D.shape:
        raise DimensionMismatch(
            "Parallel connection needs equal shapes", f"{first.D.shape} vs {second.D.shape}"
        )
    A = linalg.block_diag(first.A, second.A)
    B = np.vstack([first.B, second.B])
    C = np.hstack([first.C, second.C])
    return LtiFilter(A, B, C, first.D + second.D, name=name or f"{first.name}+{second.name}")


def inverse(filt: LtiFilter, name: str | None = None) -> LtiFilter:
    """Inverse system (A - B D^-1 C, B D^-1, -D^-1 C, D^-1) for square invertible D."""
    p, m = filt.D.shape
    if p != m:
        raise DimensionMismatch("Only square systems can be inverted", f"got {p} x {m}")
    try:
        D_inv = np.linalg.inv(filt.D)
    except np.linalg.LinAlgError as e:
        raise ValidationError(f"{filt.name}: feedthrough is singular") from e
    B_new = filt.B @ D_inv
    return LtiFilter(
        filt.A - B_new @ filt.C,
        B_new,
        -D_inv @ filt.C,
        D_inv,
        name=name or f"inv({filt.name})",
    )


def _direct_error_system(model: StateSpaceModel, filt: LtiFilter) -> LtiFilter:
    """Plant and filter states stacked; singular on the plant's unit-circle poles."""
    n, d = model.n, filt.dim
    A = np.block(
        [
            [model.F, np.zeros((n, d))],
            [filt.B @ model.H, filt.A],
        ]
    )
    B = np.block(
        [
            [model.G, np.zeros((n, model.m))],
            [np.zeros((d, model.q)), filt.B],
        ]
    )
    C = np.hstack([model.L - filt.D @ model.H, -filt.C])
    D = np.hstack([np.zeros((model.p, model.q)), -filt.D])
    return LtiFilter(A, B, C, D, name=f"T[{filt.name}]")


def error_system(model: StateSpaceModel, filt: LtiFilter) -> LtiFilter:
    """Realization of T_K = [L - K H, -K] with inputs (w, v).

    With X solving X F - A X = B H, L - K H equals
    R (zI - F)^-1 G + C (zI - A)^-1 X G where R = L - D H - C X. When R
    vanishes (the filter reproduces L x exactly, as every unbiased estimator
    does) the plant states drop out and the realization only carries the
    filter's stable poles. Otherwise both blocks are kept.

    Raises:
        DimensionMismatch: Filter does not map m observations to p estimates.
    """
    check_filter_dims(model, filt)
    d, n = filt.dim, model.n
    if d == 0:
        return _direct_error_system(model, filt)

    eig_a = linalg.eigvals(filt.A)
    eig_f = linalg.eigvals(model.F)
    if np.min(np.abs(eig_a[:, None] - eig_f[None, :])) < _SEPARATION_TOL:
        return _direct_error_system(model, filt)
    try:
        X = linalg.solve_sylvester(-filt.A, model.F, filt.B @ model.H)
    except (np.linalg.LinAlgError, ValueError):
        return _direct_error_system(model, filt)
    if not np.all(np.isfinite(X)):
        return _direct_error_system(model, filt)

    R = model.L - filt.D @ model.H - filt.C @ X
    scale = (
        np.linalg.norm(model.L)
        + np.linalg.norm(filt.D) * np.linalg.norm(model.H)
        + np.linalg.norm(filt.C) * np.linalg.norm(X)
    )
    XG = X @ model.G
    D = np.hstack([np.zeros((model.p, model.q)), -filt.D])
    if np.linalg.norm(R) <= _UNBIASED_TOL * max(scale, 1.0):
        return LtiFilter(filt.A, np.hstack([XG, -filt.B]), filt.C, D, name=f"T[{filt.name}]")

    A = linalg.block_diag(model.F, filt.A)
    B = np.block(
        [
            [model.G, np.zeros((n, model.m))],
            [XG, -filt.B],
        ]
    )
    C = np.hstack([R, filt.C])
    return LtiFilter(A, B, C, D, name=f"T[{filt.name}]")

