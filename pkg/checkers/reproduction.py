"""Reference performance tables and their per-cell checks.

Table 1 uses the scalar plant, table 2 the tracking plant with the current
position as target. Each cell compares one norm of one estimator to a
two-digit reference value.

H-infinity optimal filters are not unique. The baseline here is the central
filter at the optimal level, and two reference cells were produced by another
member of that family. Those cells are listed in KNOWN_DEVIATIONS with the value
the central filter gives; a cell that lands on it is reported as a warning.
"""

from dataclasses import dataclass

from analysis import FrequencyGrid, FrequencyMatched, NormReport, evaluate
from baselines import hinf_optimal
from config import Settings, get_default_settings
from exceptions import ValidationError
from model_file import scalar_model, tracking_model
from observability.metrics import RunMetrics
from state_space import StateSpaceModel
from synthesis import synthesize

from .base import BaseChecker, CheckerReport

ESTIMATORS = ("noncausal", "regret_opt", "h2", "hinf")
METRICS = ("frobenius_sq", "operator_sq", "regret")
ESTIMATOR_TITLES = {
    "noncausal": "Noncausal",
    "regret_opt": "Regret-optimal",
    "h2": "H2",
    "hinf": "H-infinity",
}
METRIC_TITLES = {"frobenius_sq": "||T||_F^2", "operator_sq": "||T||^2", "regret": "Regret"}

TABLE_TARGETS: dict[int, dict[str, tuple[float, float, float]]] = {
    1: {
        "noncausal": (0.46, 0.99, 0.0),
        "regret_opt": (0.65, 1.1, 0.38),
        "h2": (0.6, 1.27, 0.7),
        "hinf": (0.94, 0.99, 0.71),
    },
    2: {
        "noncausal": (0.39, 1.0, 0.0),
        "regret_opt": (0.82, 1.24, 0.65),
        "h2": (0.77, 1.4, 1.02),
        "hinf": (0.97, 1.0, 0.95),
    },
}
KNOWN_DEVIATIONS: dict[tuple[int, str, str], float] = {
    (1, "hinf", "frobenius_sq"): 0.84,
    (2, "hinf", "regret"): 1.0,
}
ANCHOR_CELL = ("noncausal", "frobenius_sq")


def table_tolerance(table: int, settings: Settings | None = None) -> float:
    settings = settings or get_default_settings()
    if table == 1:
        return settings.reproduction.table1_tolerance
    return settings.reproduction.table2_tolerance


def table_model(
    table: int, delta_t: float | None = None, settings: Settings | None = None
) -> StateSpaceModel:
    """Plant behind a reference table.

    Raises:
        ValidationError: Unknown table id.
    """
    settings = settings or get_default_settings()
    if table == 1:
        return scalar_model()
    if table == 2:
        return tracking_model(
            settings.reproduction.delta_t if delta_t is None else delta_t,
            target=settings.reproduction.tracking_target,
        )
    raise ValidationError(f"Unknown table {table}", f"use one of {sorted(TABLE_TARGETS)}")


def compute_reports(
    model: StateSpaceModel,
    settings: Settings | None = None,
    grid: FrequencyGrid | None = None,
    metrics: RunMetrics | None = None,
) -> dict[str, NormReport]:
    """Norm reports of the four estimators, keyed by estimator name."""
    settings = settings or get_default_settings()
    grid = grid or FrequencyGrid.from_settings(settings)
    metrics = metrics or RunMetrics()
    result = synthesize(model, settings=settings, metrics=metrics)
    with metrics.timer("hinf"):
        _, hinf = hinf_optimal(model, settings=settings)
    estimators = {
        "noncausal": FrequencyMatched(),
        "regret_opt": result.filter,
        "h2": result.kalman,
        "hinf": hinf,
    }
    reports = {}
    with metrics.timer("analysis"):
        for name, estimator in estimators.items():
            reports[name] = evaluate(model, estimator, grid, settings, label=name)
    return reports


@dataclass(frozen=True)
class CellSpec:
    estimator: str
    metric: str
    value: float
    target: float
    tolerance: float
    expected: float | None = None


class ReproductionCellChecker(BaseChecker):
    """Compare one table cell to its reference value."""

    description = "Table cell within tolerance of the reference value"
    group = "reproduction"

    def __init__(self, context: CellSpec):
        super().__init__(context)
        self.name = f"{context.estimator}.{context.metric}"

    def check(self) -> CheckerReport:
        cell: CellSpec = self.context
        metadata = {
            "estimator": cell.estimator,
            "metric": cell.metric,
            "value": cell.value,
            "target": cell.target,
            "tolerance": cell.tolerance,
        }
        error = abs(cell.value - cell.target)
        if error <= cell.tolerance:
            return self._pass(f"{cell.value:.4f} vs {cell.target}", **metadata)
        if cell.expected is not None and abs(cell.value - cell.expected) <= cell.tolerance:
            return self._warning(
                f"{cell.value:.4f} vs {cell.target}: known deviation",
                f"central H-infinity filter gives {cell.expected}",
                expected=cell.expected,
                **metadata,
            )
        return self._fail(f"{cell.value:.4f} vs {cell.target} (off by {error:.4f})", **metadata)


def reproduction_cells(
    reports: dict[str, NormReport], table: int, tolerance: float
) -> list[CheckerReport]:
    """One report per (estimator, metric) cell, rows in table order."""
    if table not in TABLE_TARGETS:
        raise ValidationError(f"Unknown table {table}", f"use one of {sorted(TABLE_TARGETS)}")
    cells = []
    for estimator in ESTIMATORS:
        targets = TABLE_TARGETS[table][estimator]
        report = reports[estimator]
        for metric, target in zip(METRICS, targets):
            expected = KNOWN_DEVIATIONS.get((table, estimator, metric))
            spec = CellSpec(
                estimator, metric, getattr(report, metric), target, tolerance, expected
            )
            cells.append(ReproductionCellChecker(spec).check())
    return cells


def anchor_failed(cells: list[CheckerReport]) -> bool:
    """Whether the noncausal Frobenius cell, which depends only on the plant, failed."""
    estimator, metric = ANCHOR_CELL
    return any(
        c.is_fail() and c.metadata["estimator"] == estimator and c.metadata["metric"] == metric
        for c in cells
    )
