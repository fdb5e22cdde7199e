"""Discrete algebraic Riccati equations.

Two orientations share one container:

    estimation (+1):  X = A X A* + C - A X B (R0 + B* X B)^-1 B* X A*
                      gain K = A X B R^-1,   closed loop A - K B*
    control    (-1):  X = A* X A + C - A* X B (R0 + B* X B)^-1 B* X A
                      gain K = R^-1 B* X A,  closed loop A - B K

with R = R0 + B* X B. The estimation form is the control form of A*, so every
method works on the control form internally.

Methods, tried in the configured order until one candidate passes both the
residual check and the closed-loop stability check:

    doubling     structure-preserving doubling on (A, B R0^-1 B*, C)
    fixed_point  Riccati difference recursion from X = 0
    schur        scipy.linalg.solve_discrete_are (QZ on the symplectic pencil)

C and R0 may be indefinite (the Q equation and the H-infinity equation need that).
"""

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np
from scipy import linalg

from config import SolverSettings, get_default_settings
from exceptions import (
    DimensionMismatch,
    NoStabilizingSolution,
    SingularInnovation,
    ValidationError,
)
from observability import get_logger

from .spectral import (
    as_matrix,
    chol_lower,
    hermitian_part,
    is_hermitian,
    relative_residual,
    spectral_radius,
)

_INNOVATION_COND_LIMIT = 1e12


class Orientation(IntEnum):
    """Which side of the equation X appears on."""

    ESTIMATION = 1
    CONTROL = -1


class _MethodFailed(Exception):
    """Internal: one method gave no usable candidate."""

    def __init__(self, reason: str, iterations: int = 0):
        super().__init__(reason)
        self.reason = reason
        self.iterations = iterations


@dataclass(frozen=True)
class DareProblem:
    """A discrete algebraic Riccati equation.

    Attributes:
        A: n x n state matrix.
        B: n x q input (estimation: output-transpose) matrix.
        C_cost: n x n Hermitian constant term.
        R0: q x q Hermitian weight, invertible.
        sign: Orientation.ESTIMATION (+1) or Orientation.CONTROL (-1).
        label: Name used in logs and error messages.
    """

    A: np.ndarray
    B: np.ndarray
    C_cost: np.ndarray
    R0: np.ndarray
    sign: Orientation = Orientation.ESTIMATION
    label: str = "dare"

    def __post_init__(self):
        A = as_matrix(self.A, f"{self.label}.A")
        n = A.shape[0]
        if A.shape[1] != n:
            raise DimensionMismatch(f"{self.label}: A must be square", f"got {A.shape}")
        B = as_matrix(self.B, f"{self.label}.B", rows=n)
        C = as_matrix(self.C_cost, f"{self.label}.C_cost", rows=n, cols=n)
        R0 = as_matrix(self.R0, f"{self.label}.R0", rows=B.shape[1], cols=B.shape[1])
        for name, M in (("C_cost", C), ("R0", R0)):
            if not is_hermitian(M):
                raise ValidationError(f"{self.label}: {name} is not symmetric")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C_cost", hermitian_part(C))
        object.__setattr__(self, "R0", hermitian_part(R0))
        object.__setattr__(self, "sign", Orientation(self.sign))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def q(self) -> int:
        return self.B.shape[1]

    def control_form(self) -> tuple[np.ndarray, np.ndarray]:
        """(A, B) of the equivalent control-form equation."""
        if self.sign == Orientation.ESTIMATION:
            return self.A.conj().T, self.B
        return self.A, self.B

    def residual(self, X: np.ndarray) -> float:
        """Relative Frobenius residual of X in the defining equation."""
        Ac, B = self.control_form()
        AX = Ac.conj().T @ X
        R = self.R0 + B.conj().T @ X @ B
        cross = AX @ B
        quad = cross @ np.linalg.solve(R, cross.conj().T)
        lyap = AX @ Ac
        return relative_residual(X - lyap - self.C_cost + quad, X, lyap, self.C_cost, quad)


@dataclass(frozen=True)
class RiccatiSolution:
    """Certified stabilizing solution of a DareProblem.

    Attributes:
        X: Hermitian solution.
        gain: Estimation: A X B R^-1 (n x q). Control: R^-1 B* X A (q x n).
        R: Innovation / weight matrix R0 + B* X B.
        R_sqrt: Lower Cholesky factor of R (R = R_sqrt R_sqrt*), None if R is indefinite.
        closed_loop: Estimation: A - gain B*. Control: A - B gain.
        method: Method that produced X.
        iterations: Iterations spent by that method.
        residual: Relative Frobenius residual of X.
    """

    X: np.ndarray
    gain: np.ndarray
    R: np.ndarray
    R_sqrt: np.ndarray | None
    closed_loop: np.ndarray
    method: str
    iterations: int
    residual: float
    attempts: tuple[str, ...] = field(default=())

    @property
    def R_inv_sqrt(self) -> np.ndarray:
        """Inverse of the lower Cholesky factor."""
        if self.R_sqrt is None:
            raise SingularInnovation("Innovation matrix has no Cholesky factor")
        return linalg.solve_triangular(self.R_sqrt, np.eye(self.R_sqrt.shape[0]), lower=True)

    @property
    def closed_loop_radius(self) -> float:
        return spectral_radius(self.closed_loop)


def _doubling(
    Ac: np.ndarray, G: np.ndarray, H: np.ndarray, settings: SolverSettings
) -> tuple[np.ndarray, int]:
    """Structure-preserving doubling; returns (X, iterations)."""
    n = Ac.shape[0]
    eye = np.eye(n)
    A_k, G_k, H_k = Ac.copy(), G.copy(), H.copy()
    for k in range(1, settings.max_iterations + 1):
        W = eye + G_k @ H_k
        try:
            V1 = np.linalg.solve(W, A_k)
            V2 = np.linalg.solve(W, G_k)
        except np.linalg.LinAlgError as e:
            raise _MethodFailed("I + G H singular", k) from e
        H_next = hermitian_part(H_k + A_k.conj().T @ H_k @ V1)
        G_next = hermitian_part(G_k + A_k @ V2 @ A_k.conj().T)
        A_k = A_k @ V1
        if not (np.all(np.isfinite(H_next)) and np.all(np.isfinite(A_k))):
            raise _MethodFailed("iteration diverged", k)
        delta = np.linalg.norm(H_next - H_k)
        G_k, H_k = G_next, H_next
        if delta <= settings.tolerance * np.linalg.norm(H_k) or np.linalg.norm(A_k) == 0.0:
            return H_k, k
    raise _MethodFailed(f"no convergence in {settings.max_iterations} iterations",
                        settings.max_iterations)


def _fixed_point(
    Ac: np.ndarray, B: np.ndarray, C: np.ndarray, R0: np.ndarray, settings: SolverSettings
) -> tuple[np.ndarray, int]:
    """Riccati difference recursion from zero; returns (X, iterations)."""
    X = np.zeros_like(C)
    for k in range(1, settings.max_iterations + 1):
        R = R0 + B.conj().T @ X @ B
        cross = Ac.conj().T @ X @ B
        try:
            quad = cross @ np.linalg.solve(R, cross.conj().T)
        except np.linalg.LinAlgError as e:
            raise _MethodFailed("singular innovation during recursion", k) from e
        X_next = hermitian_part(C + Ac.conj().T @ X @ Ac - quad)
        if not np.all(np.isfinite(X_next)):
            raise _MethodFailed("iteration diverged", k)
        delta = np.linalg.norm(X_next - X)
        X = X_next
        if delta <= settings.tolerance * np.linalg.norm(X):
            return X, k
    raise _MethodFailed(f"no convergence in {settings.max_iterations} iterations",
                        settings.max_iterations)


def _schur(
    Ac: np.ndarray, B: np.ndarray, C: np.ndarray, R0: np.ndarray
) -> tuple[np.ndarray, int]:
    try:
        X = linalg.solve_discrete_are(Ac, B, C, R0)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise _MethodFailed(f"QZ solver failed: {e}") from e
    return hermitian_part(X), 1


def _certify(
    prob: DareProblem, X: np.ndarray, method: str, iterations: int, settings: SolverSettings
) -> RiccatiSolution:
    """Build the solution record or raise _MethodFailed if X is not acceptable."""
    X = hermitian_part(X)
    B = prob.B
    R = hermitian_part(prob.R0 + B.conj().T @ X @ B)
    if not np.all(np.isfinite(R)) or np.linalg.cond(R) > _INNOVATION_COND_LIMIT:
        raise _MethodFailed("singular innovation", iterations)

    residual = prob.residual(X)
    if not np.isfinite(residual) or residual > settings.residual_tolerance:
        raise _MethodFailed(f"residual {residual:.3e} above tolerance", iterations)

    if prob.sign == Orientation.ESTIMATION:
        gain = np.linalg.solve(R, (prob.A @ X @ B).conj().T).conj().T
        closed = prob.A - gain @ B.conj().T
    else:
        gain = np.linalg.solve(R, B.conj().T @ X @ prob.A)
        closed = prob.A - B @ gain
    rho = spectral_radius(closed)
    if rho >= 1.0:
        raise _MethodFailed(f"closed loop not stable (rho = {rho:.12g})", iterations)

    try:
        R_sqrt = chol_lower(R)
    except np.linalg.LinAlgError:
        R_sqrt = None
    return RiccatiSolution(
        X=X,
        gain=gain,
        R=R,
        R_sqrt=R_sqrt,
        closed_loop=closed,
        method=method,
        iterations=iterations,
        residual=residual,
    )


def solve_dare(prob: DareProblem, settings: SolverSettings | None = None) -> RiccatiSolution:
    """Return the stabilizing solution of a discrete algebraic Riccati equation.

    Args:
        prob: Equation to solve.
        settings: Solver settings (process default if None).

    Returns:
        RiccatiSolution with residual <= residual_tolerance and a strictly
        stable closed loop.

    Raises:
        NoStabilizingSolution: No method produced an acceptable candidate.
        SingularInnovation: R0 is singular, or every candidate had a singular
            innovation matrix.

    Example:
        >>> sol = solve_dare(DareProblem(A=0.9, B=1.0, C_cost=1.0, R0=1.0))
        >>> round(float(sol.X[0, 0]), 4)
        1.4839
    """
    settings = settings or get_default_settings().solver
    logger = get_logger()
    Ac, B = prob.control_form()

    try:
        G = B @ np.linalg.solve(prob.R0, B.conj().T)
    except np.linalg.LinAlgError as e:
        raise SingularInnovation(f"{prob.label}: R0 is singular") from e
    G = hermitian_part(G)

    failures: list[str] = []
    for method in settings.methods:
        try:
            if method == "doubling":
                X, iterations = _doubling(Ac, G, prob.C_cost, settings)
            elif method == "fixed_point":
                X, iterations = _fixed_point(Ac, B, prob.C_cost, prob.R0, settings)
            else:
                X, iterations = _schur(Ac, B, prob.C_cost, prob.R0)
            solution = _certify(prob, X, method, iterations, settings)
        except _MethodFailed as e:
            failures.append(f"{method}: {e.reason}")
            logger.log_solver_run(prob.label, method, e.iterations, float("nan"), success=False)
            continue
        logger.log_solver_run(prob.label, method, solution.iterations, solution.residual)
        return RiccatiSolution(
            X=solution.X,
            gain=solution.gain,
            R=solution.R,
            R_sqrt=solution.R_sqrt,
            closed_loop=solution.closed_loop,
            method=solution.method,
            iterations=solution.iterations,
            residual=solution.residual,
            attempts=tuple(failures),
        )

    if failures and all("singular innovation" in f for f in failures):
        raise SingularInnovation(f"{prob.label}: innovation matrix singular", "; ".join(failures))
    raise NoStabilizingSolution(f"{prob.label}: no stabilizing solution", "; ".join(failures))
