"""Central H-infinity filter at a given attenuation level.

At level g the filter solves the indefinite estimation Riccati equation

    P = F P F* + G G* - F P C* R^-1 C P F*,   C = [H; L],  R = diag(I, -g^2 I) + C P C*

and is feasible when a stabilizing solution exists, R has inertia
(m positive, p negative), P >= 0 and F - K_f H is stable. The filter has the
Kalman structure with P in place of the H2 solution, so it tends to the
Kalman filter as g grows.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from config import Settings, get_default_settings
from exceptions import BracketFailure, Infeasible, SolverError, ValidationError
from linalg_core import DareProblem, Orientation, RiccatiSolution, solve_dare, spectral_radius
from observability import get_logger
from state_space import LtiFilter, StateSpaceModel

_PSD_TOL = 1e-9


@dataclass(frozen=True)
class HinfRiccati:
    """Indefinite Riccati solve at one level.

    Attributes:
        level: Attenuation level g (bound g^2 on ||T_K||^2).
        solution: Riccati solution (None if no stabilizing solution was found).
        inertia: (positive, negative) eigenvalue counts of R.
        feasible: All feasibility conditions hold.
        reason: Why the level is infeasible.
    """

    level: float
    solution: RiccatiSolution | None
    inertia: tuple[int, int] | None
    feasible: bool
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "inertia": list(self.inertia) if self.inertia is not None else None,
            "feasible": self.feasible,
            "reason": self.reason,
            "P": self.solution.X if self.solution is not None else None,
        }


def _filter_gain(model: StateSpaceModel, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(P H* (I + H P H*)^-1, K_f = F P H* (I + H P H*)^-1)."""
    S = np.eye(model.m) + model.H @ P @ model.H.T
    M = linalg.solve(S, model.H @ P, assume_a="sym").T
    return M, model.F @ M


def hinf_riccati(
    model: StateSpaceModel, level: float, settings: Settings | None = None
) -> HinfRiccati:
    """Solve and classify the indefinite Riccati equation at `level`."""
    if not level > 0:
        raise ValidationError("H-infinity level must be positive", f"got {level}")
    settings = settings or get_default_settings()
    C = np.vstack([model.H, model.L])
    R0 = linalg.block_diag(np.eye(model.m), -(level**2) * np.eye(model.p))
    problem = DareProblem(
        A=model.F,
        B=C.T,
        C_cost=model.G @ model.G.T,
        R0=R0,
        sign=Orientation.ESTIMATION,
        label="riccati_hinf",
    )
    try:
        solution = solve_dare(problem, settings.solver)
    except SolverError as e:
        return HinfRiccati(level, None, None, False, type(e).__name__)

    eig_r = np.linalg.eigvalsh(solution.R)
    inertia = (int(np.sum(eig_r > 0)), int(np.sum(eig_r < 0)))
    if inertia != (model.m, model.p):
        return HinfRiccati(level, solution, inertia, False, f"inertia {inertia}")
    P = solution.X
    if np.linalg.eigvalsh(P).min() < -_PSD_TOL * max(1.0, np.linalg.norm(P)):
        return HinfRiccati(level, solution, inertia, False, "P not positive semidefinite")
    _, K_f = _filter_gain(model, P)
    rho = spectral_radius(model.F - K_f @ model.H)
    if rho >= 1.0:
        return HinfRiccati(level, solution, inertia, False, f"filter unstable (rho = {rho:.6g})")
    return HinfRiccati(level, solution, inertia, True)


def hinf_filter(
    model: StateSpaceModel, level: float, settings: Settings | None = None
) -> LtiFilter:
    """Central filter with ||T_K||^2 <= level^2.

    Raises:
        Infeasible: level is below the optimal attenuation.
    """
    ric = hinf_riccati(model, level, settings)
    if not ric.feasible:
        raise Infeasible(f"H-infinity level {level:.12g} is not achievable", ric.reason)
    P = ric.solution.X
    M, K_f = _filter_gain(model, P)
    return LtiFilter(
        model.F - K_f @ model.H,
        K_f,
        model.L @ (np.eye(model.n) - M @ model.H),
        model.L @ M,
        name="hinf",
    )


def hinf_optimal(
    model: StateSpaceModel, tol: float | None = None, settings: Settings | None = None
) -> tuple[float, LtiFilter]:
    """Smallest feasible level (to relative tol) and its central filter.

    The bracket runs from 0.9 times the noncausal peak, which no causal
    filter beats, to 1.01 times the Kalman peak, grown if needed.

    Raises:
        BracketFailure: No feasible upper bracket, or feasibility is not
            monotone across the record.
    """
    from analysis import FrequencyGrid, FrequencyMatched, operator_norm_sq
    from synthesis import check_monotone, kalman_filter

    settings = settings or get_default_settings()
    cfg = settings.bisection
    tol = cfg.tolerance if tol is None else tol
    if not tol > 0:
        raise ValidationError("Bisection tolerance must be positive", f"got {tol}")
    logger = get_logger()

    if model.is_degenerate:
        return 0.0, LtiFilter.zero(model.p, model.m, dim=model.n, name="hinf")

    grid = FrequencyGrid.from_settings(settings)
    noncausal_peak, _ = operator_norm_sq(model, FrequencyMatched(), grid, settings)
    k_h2 = kalman_filter(model, settings=settings)
    kalman_peak, _ = operator_norm_sq(model, k_h2, grid, settings)
    lo = 0.9 * math.sqrt(noncausal_peak)
    hi = 1.01 * math.sqrt(kalman_peak)

    record: list[tuple[float, float | None, bool]] = []

    def probe(level: float) -> bool:
        ric = hinf_riccati(model, level, settings)
        record.append((level, None, ric.feasible))
        logger.log_bisection_step(level, None, ric.feasible, search="hinf", failure=ric.reason)
        return ric.feasible

    expansions = 0
    while not probe(hi):
        if expansions >= cfg.max_expansions:
            raise BracketFailure(
                "No feasible H-infinity level",
                f"last level {hi:.12g} after {expansions} expansions",
            )
        hi *= cfg.growth_factor
        expansions += 1

    for _ in range(cfg.max_iterations):
        if hi - lo <= tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if probe(mid):
            hi = mid
        else:
            lo = mid
    else:
        logger.warning("H-infinity bisection stopped at the step cap", lower=lo, upper=hi)

    check_monotone(record, cfg.monotone_slack, search="hinf")
    logger.info(f"H-infinity level* = {hi:.12g} (peak {hi * hi:.12g})", steps=len(record))
    return hi, hinf_filter(model, hi, settings)
