"""Stein (discrete Lyapunov) and two-sided Stein equation solvers.

    X = A X A* + C          solve_stein
    X = A X B  + C          solve_sylvester_stein

Small problems are solved exactly through the Kronecker-vectorized system.
Larger ones use a Bartels-Stewart sweep over the complex Schur forms of A and B.

Both paths are direct, so there is no convergence failure to report. A relative
residual above solver.stein_residual_tolerance is logged as a warning and the
solution is still returned; callers that need a hard bound check
relative_residual themselves.
"""

import numpy as np
from scipy import linalg

from config import SolverSettings, get_default_settings
from exceptions import DimensionMismatch, UnstableOperator, UnstablePair
from observability import get_logger

from .spectral import as_matrix, hermitian_part, is_hermitian, relative_residual, spectral_radius


def _kronecker_solve(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    # Row-major vec: vec(A X B) = (A kron B^T) vec(X)
    n, k = C.shape
    system = np.eye(n * k) - np.kron(A, B.T)
    return np.linalg.solve(system, C.reshape(-1)).reshape(n, k)


def _schur_solve(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Column sweep on T Y S + D = Y with A = U T U*, B = V S V* (complex Schur)."""
    T, U = linalg.schur(A, output="complex")
    S, V = linalg.schur(B, output="complex")
    D = U.conj().T @ C @ V
    n, k = D.shape
    Y = np.zeros((n, k), dtype=complex)
    eye = np.eye(n)
    for j in range(k):
        rhs = D[:, j].copy()
        if j > 0:
            rhs += T @ (Y[:, :j] @ S[:j, j])
        Y[:, j] = linalg.solve_triangular(eye - S[j, j] * T, rhs, lower=False)
    X = U @ Y @ V.conj().T
    if not (np.iscomplexobj(A) or np.iscomplexobj(B) or np.iscomplexobj(C)):
        X = X.real
    return X


def _solve(A: np.ndarray, B: np.ndarray, C: np.ndarray, settings: SolverSettings) -> np.ndarray:
    if max(A.shape[0], B.shape[0]) <= settings.kronecker_max_dim:
        X = _kronecker_solve(A, B, C)
    else:
        X = _schur_solve(A, B, C)
    residual = relative_residual(X - A @ X @ B - C, X, C)
    if residual > settings.stein_residual_tolerance:
        get_logger().warning(
            "Stein solution residual above tolerance",
            residual=residual,
            tolerance=settings.stein_residual_tolerance,
        )
    return X


def solve_stein(
    A: np.ndarray, C: np.ndarray, settings: SolverSettings | None = None
) -> np.ndarray:
    """Solve X = A X A* + C.

    Args:
        A: n x n matrix with spectral radius below one.
        C: n x n forcing term.
        settings: Solver settings (process default if None).

    Returns:
        The unique solution X; Hermitian whenever C is.

    Raises:
        UnstableOperator: rho(A) >= 1 - stability_margin.
        DimensionMismatch: A, C not square of the same size.
    """
    settings = settings or get_default_settings().solver
    A = as_matrix(A, "A")
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionMismatch("A must be square", f"got {A.shape}")
    C = as_matrix(C, "C", rows=n, cols=n)

    rho = spectral_radius(A)
    if rho >= 1.0 - settings.stability_margin:
        raise UnstableOperator("Stein operator is not strictly stable", f"rho(A) = {rho:.12g}")

    X = _solve(A, A.conj().T, C, settings)
    if is_hermitian(C):
        X = hermitian_part(X)
    return X


def solve_sylvester_stein(
    A: np.ndarray, B: np.ndarray, C: np.ndarray, settings: SolverSettings | None = None
) -> np.ndarray:
    """Solve the two-sided Stein equation X = A X B + C.

    Args:
        A: n x n matrix.
        B: k x k matrix with rho(A) * rho(B) < 1.
        C: n x k forcing term.
        settings: Solver settings (process default if None).

    Returns:
        The unique n x k solution.

    Raises:
        UnstablePair: rho(A) * rho(B) >= 1 - stability_margin.
        DimensionMismatch: Inconsistent shapes.
    """
    settings = settings or get_default_settings().solver
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape[0] != A.shape[1] or B.shape[0] != B.shape[1]:
        raise DimensionMismatch("A and B must be square", f"got {A.shape} and {B.shape}")
    C = as_matrix(C, "C", rows=A.shape[0], cols=B.shape[0])

    product = spectral_radius(A) * spectral_radius(B)
    if product >= 1.0 - settings.stability_margin:
        raise UnstablePair(
            "Two-sided Stein operator is not strictly stable",
            f"rho(A) * rho(B) = {product:.12g}",
        )
    return _solve(A, B, C, settings)
