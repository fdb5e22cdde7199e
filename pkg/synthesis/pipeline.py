"""End-to-end synthesis of the regret-optimal estimator."""

from dataclasses import dataclass, field

from config import Settings, get_default_settings
from exceptions import SingularPencil
from observability import get_logger
from observability.metrics import RunMetrics
from state_space import LtiFilter, StateSpaceModel

from .bisection import GammaSearch, find_gamma_star, kalman_regret
from .filters import assemble_regret_filter, kalman_filter, zero_regret_filter
from .nehari import NehariConstants, nehari_constants
from .riccati_chain import GammaWorkspace, build_workspace, riccati_p

SIGMA_STATISTIC = "hankel: max singular value of Pi^1/2 Z Pi^1/2"


@dataclass(frozen=True)
class SynthesisResult:
    """Everything produced by one synthesis run.

    Attributes:
        model: Plant the filter was built for.
        gamma_star: Optimal regret level; the optimal regret is gamma_star^2.
        workspace: Riccati chain at gamma_star (None for degenerate plants).
        nehari: Causal approximant constants (None for degenerate plants).
        filter: Regret-optimal estimator, dimension 3n.
        kalman: Kalman (H2) estimator, dimension n.
        kalman_regret: Regret of the Kalman estimator, the bisection's upper bracket.
        search: Bisection record.
        metrics: Stage timings.
    """

    model: StateSpaceModel
    gamma_star: float
    workspace: GammaWorkspace | None
    nehari: NehariConstants | None
    filter: LtiFilter
    kalman: LtiFilter
    kalman_regret: float
    search: GammaSearch
    metrics: RunMetrics = field(default_factory=RunMetrics, compare=False)

    @property
    def regret(self) -> float:
        return self.gamma_star**2

    @property
    def sigma(self) -> float | None:
        """Hankel statistic at gamma_star."""
        check = self.search.check
        return None if check is None else check.sigma

    @property
    def sigma_raw(self) -> float | None:
        """Largest singular value of Z Pi at gamma_star, for comparison."""
        check = self.search.check
        return None if check is None else check.sigma_raw

    def to_dict(self) -> dict:
        """JSON-ready report: level, matrices, filters and the bisection record."""
        return {
            "model": self.model.to_dict(),
            "gamma_star": self.gamma_star,
            "gamma_star_sq": self.regret,
            "sigma": self.sigma,
            "sigma_statistic": SIGMA_STATISTIC,
            "sigma_raw": self.sigma_raw,
            "kalman_regret": self.kalman_regret,
            "matrices": self.workspace.matrices() if self.workspace is not None else None,
            "nehari": self.nehari.to_dict() if self.nehari is not None else None,
            "filter": self.filter.to_dict(),
            "kalman_filter": self.kalman.to_dict(),
            "bisection": self.search.to_dict(),
            "timings": self.metrics.summary(),
        }


def synthesize(
    model: StateSpaceModel,
    tol: float | None = None,
    settings: Settings | None = None,
    metrics: RunMetrics | None = None,
) -> SynthesisResult:
    """Synthesize the regret-optimal estimator for `model`.

    Steps: Kalman filter, its regret as the upper bracket, bisection for
    gamma*, the causal approximant at gamma* and the 3n assembly.

    Raises:
        NoStabilizingSolution: The Kalman equation has no stabilizing solution.
        BracketFailure: The bisection record is not monotone.
        SingularPencil: The approximant stays singular after one upward retry.
    """
    settings = settings or get_default_settings()
    tol = settings.bisection.tolerance if tol is None else tol
    metrics = metrics or RunMetrics()
    logger = get_logger()
    logger.info(f"Synthesizing regret-optimal filter for '{model.name}'", dims=model.dims)

    with metrics.timer("kalman"):
        kalman = riccati_p(model, settings)
        k_h2 = kalman_filter(model, kalman)

    if model.is_degenerate:
        logger.info("Degenerate plant: returning the zero estimator")
        return SynthesisResult(
            model=model,
            gamma_star=0.0,
            workspace=None,
            nehari=None,
            filter=zero_regret_filter(model),
            kalman=k_h2,
            kalman_regret=0.0,
            search=find_gamma_star(model, tol, upper_regret=0.0, settings=settings),
            metrics=metrics,
        )

    with metrics.timer("kalman_regret"):
        upper = kalman_regret(model, kalman, settings)
    with metrics.timer("bisection"):
        search = find_gamma_star(model, tol, upper_regret=upper, kalman=kalman, settings=settings)

    gamma = search.gamma_star
    ws = search.check.workspace
    with metrics.timer("nehari"):
        try:
            nehari = nehari_constants(model, ws)
        except SingularPencil as e:
            gamma *= 1.0 + tol
            logger.warning(
                "Singular approximant at gamma*, retrying above it", gamma=gamma, reason=str(e)
            )
            ws = build_workspace(model, gamma, kalman=kalman, Pi=ws.Pi, settings=settings)
            nehari = nehari_constants(model, ws)

    with metrics.timer("assembly"):
        filt = assemble_regret_filter(model, ws, nehari)

    logger.info(
        f"Regret-optimal filter ready: gamma*^2 = {gamma * gamma:.9g}",
        dim=filt.dim,
        spectral_radius=filt.spectral_radius,
    )
    return SynthesisResult(
        model=model,
        gamma_star=gamma,
        workspace=ws,
        nehari=nehari,
        filter=filt,
        kalman=k_h2,
        kalman_regret=upper,
        search=search,
        metrics=metrics,
    )
