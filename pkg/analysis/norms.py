"""Frobenius, operator and regret norms of error operators.

    ||T_K||_F^2  = (1/2 pi) ∫ trace(T_K* T_K) dw       rectangle rule, auto-refined
    ||T_K||^2    = max_w  sigma_max(T_K)^2              grid max, then local search
    regret(K)    = max_w |lambda|max(T_K*T_K - T_K0*T_K0)
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from config import Settings, get_default_settings
from exceptions import NonConvergedQuadrature, SolverError
from observability import get_logger
from state_space import StateSpaceModel

from .error_operator import (
    Estimator,
    FrequencyMatched,
    error_operator_batch,
    operator_curve,
    regret_curve,
)
from .grid import FrequencyGrid

_NONCAUSAL = FrequencyMatched()


def _frobenius_on(
    model: StateSpaceModel, estimator: Estimator, grid: FrequencyGrid, settings: Settings
) -> float:
    samples = error_operator_batch(model, estimator, grid.omegas, settings)
    return float(np.mean(np.sum(np.abs(samples) ** 2, axis=(1, 2))))


def frobenius_norm_sq(
    model: StateSpaceModel,
    estimator: Estimator,
    grid: FrequencyGrid | None = None,
    settings: Settings | None = None,
) -> float:
    """Squared Frobenius (H2) norm of T_K.

    The grid is doubled until the value changes by less than the configured
    relative tolerance.

    Raises:
        NonConvergedQuadrature: The refinement cap was reached first.
    """
    settings = settings or get_default_settings()
    grid = grid or FrequencyGrid.from_settings(settings)
    previous = _frobenius_on(model, estimator, grid, settings)
    while True:
        if 2 * grid.count > settings.grid.max_count:
            raise NonConvergedQuadrature(
                f"Frobenius norm of '{estimator.name}' did not settle",
                f"{grid.count} points, last value {previous:.12g}",
            )
        grid = grid.refined()
        current = _frobenius_on(model, estimator, grid, settings)
        if abs(current - previous) <= settings.grid.refine_tolerance * abs(current):
            get_logger().debug(
                f"Frobenius norm of '{estimator.name}' settled",
                points=grid.count,
                value=current,
            )
            return current
        previous = current


def _refine_peak(
    fn: Callable[[float], float],
    omegas: np.ndarray,
    curve: np.ndarray,
    step: float,
    xtol: float,
) -> tuple[float, float]:
    """Bounded scalar search around the best grid point; returns (value, omega)."""
    k = int(np.argmax(curve))
    best, center = float(curve[k]), float(omegas[k])
    try:
        res = optimize.minimize_scalar(
            lambda w: -fn(w),
            bounds=(center - step, center + step),
            method="bounded",
            options={"xatol": xtol},
        )
    except (SolverError, np.linalg.LinAlgError):
        # The neighbourhood touches a pole; the grid value stands
        return best, center
    if res.success and -res.fun > best:
        return float(-res.fun), float(res.x) % (2.0 * np.pi)
    return best, center


def operator_norm_sq(
    model: StateSpaceModel,
    estimator: Estimator,
    grid: FrequencyGrid | None = None,
    settings: Settings | None = None,
) -> tuple[float, float]:
    """Squared operator (H-infinity) norm of T_K and the frequency attaining it."""
    settings = settings or get_default_settings()
    grid = grid or FrequencyGrid.from_settings(settings)
    curve = operator_curve(error_operator_batch(model, estimator, grid.omegas, settings))

    def at(w: float) -> float:
        return float(operator_curve(error_operator_batch(model, estimator, w, settings))[0])

    return _refine_peak(at, grid.omegas, curve, grid.step, settings.grid.peak_xtol)


def regret_norm(
    model: StateSpaceModel,
    estimator: Estimator,
    grid: FrequencyGrid | None = None,
    settings: Settings | None = None,
) -> tuple[float, np.ndarray]:
    """Regret of an estimator against the noncausal optimum, and its curve.

    Example:
        >>> value, _ = regret_norm(scalar_model(), FrequencyMatched())
        >>> value
        0.0
    """
    settings = settings or get_default_settings()
    grid = grid or FrequencyGrid.from_settings(settings)
    omegas = grid.omegas
    curve = regret_curve(
        error_operator_batch(model, estimator, omegas, settings),
        error_operator_batch(model, _NONCAUSAL, omegas, settings),
    )

    def at(w: float) -> float:
        return float(
            regret_curve(
                error_operator_batch(model, estimator, w, settings),
                error_operator_batch(model, _NONCAUSAL, w, settings),
            )[0]
        )

    value, _ = _refine_peak(at, omegas, curve, grid.step, settings.grid.peak_xtol)
    return value, curve


@dataclass(frozen=True)
class NormReport:
    """Norms and per-frequency curves of one estimator.

    Attributes:
        label: Estimator name (column name in exported curves).
        frobenius_sq: ||T_K||_F^2.
        operator_sq: ||T_K||^2.
        regret: Regret against the noncausal optimum.
        argmax_omega: Frequency of the operator-norm peak.
        omegas: Grid the curves are sampled on.
        operator_curve: sigma_max(T_K)^2 per frequency.
        regret_curve: Regret per frequency.
    """

    label: str
    frobenius_sq: float
    operator_sq: float
    regret: float
    argmax_omega: float
    omegas: np.ndarray
    operator_curve: np.ndarray
    regret_curve: np.ndarray

    def curve(self, quantity: str = "operator") -> np.ndarray:
        return self.regret_curve if quantity == "regret" else self.operator_curve

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "frobenius_sq": self.frobenius_sq,
            "operator_sq": self.operator_sq,
            "regret": self.regret,
            "argmax_omega": self.argmax_omega,
        }


def evaluate(
    model: StateSpaceModel,
    estimator: Estimator,
    grid: FrequencyGrid | None = None,
    settings: Settings | None = None,
    label: str | None = None,
) -> NormReport:
    """All three norms of one estimator plus its curves on `grid`."""
    settings = settings or get_default_settings()
    grid = grid or FrequencyGrid.from_settings(settings)
    omegas = grid.omegas
    samples = error_operator_batch(model, estimator, omegas, settings)
    reference = error_operator_batch(model, _NONCAUSAL, omegas, settings)
    op_curve = operator_curve(samples)
    reg_curve = regret_curve(samples, reference)
    operator_sq, argmax_omega = operator_norm_sq(model, estimator, grid, settings)
    regret, _ = regret_norm(model, estimator, grid, settings)
    return NormReport(
        label=label or estimator.name,
        frobenius_sq=frobenius_norm_sq(model, estimator, grid, settings),
        operator_sq=operator_sq,
        regret=regret,
        argmax_omega=argmax_omega,
        omegas=omegas,
        operator_curve=op_curve,
        regret_curve=reg_curve,
    )
