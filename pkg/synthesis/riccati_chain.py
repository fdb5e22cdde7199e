"""The Riccati and Stein equations behind the regret-optimal filter.

    P   estimation DARE (Kalman): A = F,   B = H*, C = G G*,               R0 = I
    W   control DARE:             A = F,   B = G,  C = H*H + gamma^-2 L*L, R0 = I
    Q   estimation DARE:          A = F_W, B = L*, C = -G R_W^-1 G*,       R0 = gamma^2 I
    U   two-sided Stein:          U = K_Q L P F_P* + F_Q U F_P*
    Pi  Stein in F_P*:            Pi = F_P* Pi F_P + H* R_e^-1 H
    Z   Stein in F_P:             Z = F_P Z F_P* + F_P (P - U)* L* R_Q^-1 L (P - U) F_P*

R_e = I + H P H*. Square roots are lower Cholesky factors.
"""

from dataclasses import dataclass

import numpy as np

from config import Settings, get_default_settings
from exceptions import IndefiniteRQ, ValidationError
from linalg_core import (
    DareProblem,
    Orientation,
    RiccatiSolution,
    solve_dare,
    solve_stein,
    solve_sylvester_stein,
)
from state_space import StateSpaceModel


def riccati_p(model: StateSpaceModel, settings: Settings | None = None) -> RiccatiSolution:
    """Kalman filter Riccati equation.

    The returned solution carries P (X), K_P = F P H* R_e^-1 (gain),
    R_e = I + H P H* (R), its Cholesky factor and F_P = F - K_P H (closed_loop).

    Raises:
        NoStabilizingSolution: (F, H) is not detectable.
    """
    settings = settings or get_default_settings()
    problem = DareProblem(
        A=model.F,
        B=model.H.T,
        C_cost=model.G @ model.G.T,
        R0=np.eye(model.m),
        sign=Orientation.ESTIMATION,
        label="riccati_p",
    )
    return solve_dare(problem, settings.solver)


def riccati_w(
    model: StateSpaceModel, gamma: float, settings: Settings | None = None
) -> RiccatiSolution:
    """W equation at level gamma.

    Solution fields: W (X), K_W = R_W^-1 G* W F (gain), R_W = I + G* W G (R),
    F_W = F - G K_W (closed_loop).
    """
    if not gamma > 0:
        raise ValidationError("gamma must be positive", f"got {gamma}")
    settings = settings or get_default_settings()
    problem = DareProblem(
        A=model.F,
        B=model.G,
        C_cost=model.H.T @ model.H + gamma**-2 * model.L.T @ model.L,
        R0=np.eye(model.q),
        sign=Orientation.CONTROL,
        label="riccati_w",
    )
    return solve_dare(problem, settings.solver)


def riccati_q(
    model: StateSpaceModel,
    gamma: float,
    w: RiccatiSolution,
    settings: Settings | None = None,
) -> RiccatiSolution:
    """Q equation at level gamma, given the W solution at the same gamma.

    Solution fields: Q (X), K_Q = F_W Q L* R_Q^-1 (gain),
    R_Q = gamma^2 I + L Q L* (R), F_Q = F_W - K_Q L (closed_loop).

    Raises:
        IndefiniteRQ: The stabilizing solution has R_Q not positive definite.
    """
    if not gamma > 0:
        raise ValidationError("gamma must be positive", f"got {gamma}")
    settings = settings or get_default_settings()
    constant = -model.G @ np.linalg.solve(w.R, model.G.T)
    problem = DareProblem(
        A=w.closed_loop,
        B=model.L.T,
        C_cost=constant,
        R0=gamma**2 * np.eye(model.p),
        sign=Orientation.ESTIMATION,
        label="riccati_q",
    )
    solution = solve_dare(problem, settings.solver)
    if solution.R_sqrt is None:
        raise IndefiniteRQ(
            "R_Q is not positive definite",
            f"gamma = {gamma:.12g}, min eigenvalue = {np.linalg.eigvalsh(solution.R).min():.3e}",
        )
    return solution


def lyapunov_u(
    model: StateSpaceModel,
    kalman: RiccatiSolution,
    q: RiccatiSolution,
    settings: Settings | None = None,
) -> np.ndarray:
    """U = K_Q L P F_P* + F_Q U F_P*."""
    settings = settings or get_default_settings()
    F_P = kalman.closed_loop
    forcing = q.gain @ model.L @ kalman.X @ F_P.T
    return solve_sylvester_stein(q.closed_loop, F_P.T, forcing, settings.solver)


def pi_gramian(
    model: StateSpaceModel, kalman: RiccatiSolution, settings: Settings | None = None
) -> np.ndarray:
    """Pi = F_P* Pi F_P + H* R_e^-1 H; independent of gamma."""
    settings = settings or get_default_settings()
    F_P = kalman.closed_loop
    forcing = model.H.T @ np.linalg.solve(kalman.R, model.H)
    return solve_stein(F_P.T, forcing, settings.solver)


def z_gramian(
    model: StateSpaceModel,
    kalman: RiccatiSolution,
    q: RiccatiSolution,
    U: np.ndarray,
    settings: Settings | None = None,
) -> np.ndarray:
    """Z = F_P Z F_P* + F_P (P - U)* L* R_Q^-1 L (P - U) F_P*."""
    settings = settings or get_default_settings()
    F_P = kalman.closed_loop
    LPU = model.L @ (kalman.X - U)
    forcing = F_P @ LPU.T @ np.linalg.solve(q.R, LPU) @ F_P.T
    return solve_stein(F_P, forcing, settings.solver)


@dataclass(frozen=True)
class GammaWorkspace:
    """Every gamma-dependent quantity of the synthesis at one level.

    Attributes:
        gamma: Level (regret threshold is gamma^2).
        kalman: P solution (P, K_P, R_e, F_P).
        w: W solution (W, K_W, R_W, F_W).
        q: Q solution (Q, K_Q, R_Q, F_Q).
        U: Two-sided Stein solution.
        Pi: Gramian of the anticausal part, gamma-independent.
        Z: Gramian of the anticausal part at this gamma.
    """

    gamma: float
    kalman: RiccatiSolution
    w: RiccatiSolution
    q: RiccatiSolution
    U: np.ndarray
    Pi: np.ndarray
    Z: np.ndarray

    @property
    def P(self) -> np.ndarray:
        return self.kalman.X

    @property
    def K_P(self) -> np.ndarray:
        return self.kalman.gain

    @property
    def F_P(self) -> np.ndarray:
        return self.kalman.closed_loop

    @property
    def Re(self) -> np.ndarray:
        return self.kalman.R

    @property
    def Re_sqrt(self) -> np.ndarray:
        return self.kalman.R_sqrt

    @property
    def Re_inv_sqrt(self) -> np.ndarray:
        return self.kalman.R_inv_sqrt

    @property
    def W(self) -> np.ndarray:
        return self.w.X

    @property
    def K_W(self) -> np.ndarray:
        return self.w.gain

    @property
    def R_W(self) -> np.ndarray:
        return self.w.R

    @property
    def F_W(self) -> np.ndarray:
        return self.w.closed_loop

    @property
    def Q(self) -> np.ndarray:
        return self.q.X

    @property
    def K_Q(self) -> np.ndarray:
        return self.q.gain

    @property
    def R_Q(self) -> np.ndarray:
        return self.q.R

    @property
    def R_Q_sqrt(self) -> np.ndarray:
        return self.q.R_sqrt

    @property
    def R_Q_inv_sqrt(self) -> np.ndarray:
        return self.q.R_inv_sqrt

    @property
    def F_Q(self) -> np.ndarray:
        return self.q.closed_loop

    def matrices(self) -> dict[str, np.ndarray]:
        """All matrices by name, for reports."""
        return {
            "P": self.P,
            "K_P": self.K_P,
            "F_P": self.F_P,
            "W": self.W,
            "K_W": self.K_W,
            "R_W": self.R_W,
            "F_W": self.F_W,
            "Q": self.Q,
            "K_Q": self.K_Q,
            "R_Q": self.R_Q,
            "F_Q": self.F_Q,
            "U": self.U,
            "Pi": self.Pi,
            "Z": self.Z,
        }


def build_workspace(
    model: StateSpaceModel,
    gamma: float,
    kalman: RiccatiSolution | None = None,
    Pi: np.ndarray | None = None,
    settings: Settings | None = None,
) -> GammaWorkspace:
    """Solve the W, Q, U and Z equations at gamma.

    kalman and Pi do not depend on gamma; pass them in to reuse them across
    bisection steps.
    """
    settings = settings or get_default_settings()
    kalman = kalman if kalman is not None else riccati_p(model, settings)
    Pi = Pi if Pi is not None else pi_gramian(model, kalman, settings)
    w = riccati_w(model, gamma, settings)
    q = riccati_q(model, gamma, w, settings)
    U = lyapunov_u(model, kalman, q, settings)
    Z = z_gramian(model, kalman, q, U, settings)
    return GammaWorkspace(gamma=gamma, kalman=kalman, w=w, q=q, U=U, Pi=Pi, Z=Z)
