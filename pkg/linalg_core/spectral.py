"""Small dense-matrix helpers shared by the solvers.

Singular values, spectral radius, Hermitian parts, PSD square roots and
input validation. Everything here is total on finite input.
"""

import numpy as np
from scipy import linalg

from exceptions import DimensionMismatch, ValidationError


def as_matrix(value, name: str, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce scalars, vectors and nested lists into a finite 2-D array.

    Scalars become 1x1. Shape constraints are enforced when given.

    Raises:
        ValidationError: Non-finite entries or more than two dimensions.
        DimensionMismatch: Shape differs from (rows, cols).
    """
    arr = np.asarray(value)
    if arr.dtype == object:
        raise ValidationError(f"{name} is not a numeric matrix")
    if not np.iscomplexobj(arr):
        arr = arr.astype(float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(1, -1) if rows == 1 else arr.reshape(-1, 1)
    elif arr.ndim > 2:
        raise ValidationError(f"{name} must be a matrix", f"got {arr.ndim} dimensions")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if rows is not None and arr.shape[0] != rows:
        raise DimensionMismatch(f"{name} has {arr.shape[0]} rows", f"expected {rows}")
    if cols is not None and arr.shape[1] != cols:
        raise DimensionMismatch(f"{name} has {arr.shape[1]} columns", f"expected {cols}")
    return arr


def max_singular_value(M: np.ndarray) -> float:
    """Largest singular value; 0 for empty matrices."""
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return 0.0
    return float(linalg.svdvals(M)[0])


def spectral_radius(M: np.ndarray) -> float:
    """Largest eigenvalue modulus; 0 for an empty matrix."""
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return 0.0
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch("spectral_radius needs a square matrix", f"got {M.shape}")
    return float(np.max(np.abs(linalg.eigvals(M))))


def hermitian_part(X: np.ndarray) -> np.ndarray:
    return (X + X.conj().T) / 2


def is_hermitian(X: np.ndarray, tol: float = 1e-12) -> bool:
    """Hermitian to a tolerance relative to the matrix size."""
    scale = max(np.linalg.norm(X), 1.0)
    return bool(np.linalg.norm(X - X.conj().T) <= tol * scale)


def sqrt_psd(M: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues below zero (roundoff) are clipped.
    """
    w, V = linalg.eigh(hermitian_part(M))
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T


def chol_lower(M: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor, so that M = S S*.

    Raises:
        numpy.linalg.LinAlgError: M is not positive definite.
    """
    return np.linalg.cholesky(hermitian_part(M))


def relative_residual(residual: np.ndarray, *terms: np.ndarray) -> float:
    """Frobenius norm of residual relative to the largest term of the equation."""
    num = float(np.linalg.norm(residual))
    scale = max((float(np.linalg.norm(t)) for t in terms), default=0.0)
    if scale == 0.0:
        return num
    return num / scale
