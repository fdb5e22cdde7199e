"""Bisection for the smallest achievable regret level gamma*."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

from config import Settings, get_default_settings
from exceptions import BracketFailure, ValidationError
from linalg_core import RiccatiSolution
from observability import get_logger
from state_space import StateSpaceModel

from .existence import ExistenceCheck, existence_check
from .riccati_chain import pi_gramian, riccati_p


def check_monotone(
    record: Sequence[tuple[float, float | None, bool]], slack: float, search: str = "regret"
) -> None:
    """Verify a bisection record of (level, statistic, passed) is consistent.

    No level may pass below a level that failed, and recorded statistics must
    not increase with the level beyond `slack` relative to the larger value.

    Raises:
        BracketFailure: The record is not monotone.
    """
    ordered = sorted(record, key=lambda r: r[0])
    highest_fail = max((g for g, _, ok in ordered if not ok), default=-math.inf)
    for gamma, _, ok in ordered:
        if ok and gamma < highest_fail:
            raise BracketFailure(
                f"{search} feasibility is not monotone",
                f"level {gamma:.12g} passed below failed level {highest_fail:.12g}",
            )
    stats = [(g, s) for g, s, _ in ordered if s is not None]
    for (g0, s0), (g1, s1) in zip(stats, stats[1:]):
        if s1 > s0 + slack * max(abs(s0), abs(s1)):
            raise BracketFailure(
                f"{search} statistic increases with the level",
                f"{s0:.12g} at {g0:.12g} < {s1:.12g} at {g1:.12g}",
            )


@dataclass(frozen=True)
class GammaSearch:
    """Bisection outcome.

    Attributes:
        gamma_star: Smallest feasible level found (regret gamma_star^2).
        check: Existence test at gamma_star (None for degenerate plants).
        steps: Every probe in evaluation order.
        lower: Final lower bracket.
        upper_initial: Upper bracket after any growth.
        expansions: Number of times the upper bracket was grown.
        converged: Bracket reached the relative tolerance within the step cap.
    """

    gamma_star: float
    check: ExistenceCheck | None
    steps: tuple[ExistenceCheck, ...]
    lower: float
    upper_initial: float
    expansions: int = 0
    converged: bool = True

    @property
    def record(self) -> list[dict]:
        return [step.to_dict() for step in self.steps]

    def to_dict(self) -> dict:
        return {
            "gamma_star": self.gamma_star,
            "lower": self.lower,
            "upper_initial": self.upper_initial,
            "expansions": self.expansions,
            "converged": self.converged,
            "steps": self.record,
        }


def kalman_regret(model: StateSpaceModel, kalman: RiccatiSolution, settings: Settings) -> float:
    """Regret of the Kalman estimator on the default grid."""
    from analysis import FrequencyGrid, regret_norm

    from .filters import kalman_filter

    grid = FrequencyGrid.from_settings(settings)
    value, _ = regret_norm(model, kalman_filter(model, kalman), grid, settings)
    return value


def find_gamma_star(
    model: StateSpaceModel,
    tol: float | None = None,
    upper_regret: float | None = None,
    kalman: RiccatiSolution | None = None,
    settings: Settings | None = None,
) -> GammaSearch:
    """Bisect on the existence test for the smallest feasible gamma.

    The upper bracket is the Kalman filter's regret (always achievable),
    grown if roundoff makes it fail. The lower bracket is a fixed fraction of
    it and is never probed.

    Args:
        model: Plant.
        tol: Relative bracket width to stop at (default from settings).
        upper_regret: Regret of a known achievable filter; computed from the
            Kalman filter when omitted.
        kalman: Reusable Kalman Riccati solution.
        settings: Tolerances.

    Raises:
        BracketFailure: No feasible upper bracket, or a non-monotone record.
    """
    settings = settings or get_default_settings()
    cfg = settings.bisection
    tol = cfg.tolerance if tol is None else tol
    if not tol > 0:
        raise ValidationError("Bisection tolerance must be positive", f"got {tol}")
    logger = get_logger()

    if model.is_degenerate:
        return GammaSearch(gamma_star=0.0, check=None, steps=(), lower=0.0, upper_initial=0.0)

    kalman = kalman if kalman is not None else riccati_p(model, settings)
    Pi = pi_gramian(model, kalman, settings)
    if upper_regret is None:
        upper_regret = kalman_regret(model, kalman, settings)
    hi = math.sqrt(max(upper_regret, 0.0)) * (1.0 + tol)
    if hi <= 0.0:
        hi = 1.0

    steps: list[ExistenceCheck] = []

    def probe(gamma: float) -> ExistenceCheck:
        check = existence_check(model, gamma, kalman=kalman, Pi=Pi, settings=settings)
        steps.append(check)
        logger.log_bisection_step(gamma, check.sigma, check.passed, failure=check.failure)
        return check

    best = probe(hi)
    expansions = 0
    while not best.passed:
        if expansions >= cfg.max_expansions:
            raise BracketFailure(
                "No feasible upper bracket",
                f"last level {hi:.12g} failed after {expansions} expansions",
            )
        hi *= cfg.growth_factor
        expansions += 1
        best = probe(hi)
    upper_initial = hi
    lo = cfg.lower_ratio * hi

    converged = False
    for _ in range(cfg.max_iterations):
        if hi - lo <= tol * hi:
            converged = True
            break
        mid = 0.5 * (lo + hi)
        check = probe(mid)
        if check.passed:
            hi, best = mid, check
        else:
            lo = mid
    else:
        converged = hi - lo <= tol * hi
    if not converged:
        logger.warning(
            "Bisection stopped at the step cap",
            lower=lo,
            upper=hi,
            steps=len(steps),
        )

    check_monotone([(s.gamma, s.sigma, s.passed) for s in steps], cfg.monotone_slack)
    logger.info(
        f"gamma* = {hi:.12g} (regret {hi * hi:.12g})",
        steps=len(steps),
        sigma=best.sigma,
    )
    return GammaSearch(
        gamma_star=hi,
        check=best,
        steps=tuple(steps),
        lower=lo,
        upper_initial=upper_initial,
        expansions=expansions,
        converged=converged,
    )
