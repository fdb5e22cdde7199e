"""Existence test for a gamma-optimal estimator."""

from dataclasses import dataclass

import numpy as np

from config import Settings, get_default_settings
from exceptions import SolverError, SynthesisError
from linalg_core import RiccatiSolution, max_singular_value, sqrt_psd
from state_space import StateSpaceModel

from .riccati_chain import GammaWorkspace, build_workspace


def hankel_statistic(Z: np.ndarray, Pi: np.ndarray) -> float:
    """Squared largest Hankel singular value of the anticausal part.

    Equals the largest eigenvalue of Z Pi, computed through the PSD form
    Pi^1/2 Z Pi^1/2.
    """
    root = sqrt_psd(Pi)
    return max_singular_value(root @ Z @ root)


@dataclass(frozen=True)
class ExistenceCheck:
    """Outcome of the existence test at one gamma.

    Attributes:
        gamma: Level tested.
        sigma: Hankel statistic (None when a solve failed).
        sigma_raw: Largest singular value of Z Pi (None when a solve failed).
        passed: sigma <= 1.
        failure: Name of the error that made gamma infeasible, if any.
        workspace: Quantities at gamma (None when a solve failed).
    """

    gamma: float
    sigma: float | None
    sigma_raw: float | None
    passed: bool
    failure: str | None = None
    workspace: GammaWorkspace | None = None

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "sigma": self.sigma,
            "sigma_raw": self.sigma_raw,
            "passed": self.passed,
            "failure": self.failure,
        }


def existence_check(
    model: StateSpaceModel,
    gamma: float,
    kalman: RiccatiSolution | None = None,
    Pi: np.ndarray | None = None,
    settings: Settings | None = None,
) -> ExistenceCheck:
    """Test whether a causal estimator with regret at most gamma^2 exists.

    Solver and synthesis errors at this gamma count as infeasible and are
    reported through `failure` rather than raised.

    Example:
        >>> check = existence_check(scalar_model(), gamma=0.7 ** 0.5)
        >>> check.passed
        True
    """
    settings = settings or get_default_settings()
    try:
        ws = build_workspace(model, gamma, kalman=kalman, Pi=Pi, settings=settings)
    except (SolverError, SynthesisError) as e:
        if model.is_degenerate:
            # Nothing to estimate: every level is achievable by the zero filter
            return ExistenceCheck(gamma=gamma, sigma=0.0, sigma_raw=0.0, passed=True)
        return ExistenceCheck(
            gamma=gamma, sigma=None, sigma_raw=None, passed=False, failure=type(e).__name__
        )
    sigma = hankel_statistic(ws.Z, ws.Pi)
    return ExistenceCheck(
        gamma=gamma,
        sigma=sigma,
        sigma_raw=max_singular_value(ws.Z @ ws.Pi),
        passed=sigma <= 1.0,
        workspace=ws,
    )
