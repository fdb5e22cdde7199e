"""Run estimators against disturbance traces and record error energy."""

import math
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import signal

from config import Settings, get_default_settings
from exceptions import UnstableOperator, ValidationError
from observability import get_logger
from state_space import LtiFilter, StateSpaceModel, check_filter_dims
from utils import csv_text, write_text_output

from .disturbance import DisturbanceSpec, generate, worst_case_disturbance


@dataclass(frozen=True)
class SimResult:
    """Per-filter error traces of one experiment.

    Attributes:
        kind: Disturbance kind.
        names: Filter names in run order.
        errors: name -> (horizon, p) estimation errors s - s_hat.
        energies: name -> per-step e* e.
        running_avg: name -> (1/t) sum_{i<=t} e_i* e_i.
        disturbance_energy: name -> per-step w* w + v* v of the trace that filter saw.
        burn_in: Steps excluded from plateau statistics.
    """

    kind: str
    names: tuple[str, ...]
    errors: dict[str, np.ndarray]
    energies: dict[str, np.ndarray]
    running_avg: dict[str, np.ndarray]
    disturbance_energy: dict[str, np.ndarray]
    burn_in: int

    @property
    def horizon(self) -> int:
        return next(iter(self.energies.values())).size if self.energies else 0

    def final(self) -> dict[str, float]:
        """Terminal running average per filter."""
        return {name: float(self.running_avg[name][-1]) for name in self.names}


def _run_filter(filt: LtiFilter, inputs: np.ndarray) -> np.ndarray:
    if filt.dim == 0:
        return inputs @ filt.D.T
    _, out, _ = signal.dlsim((filt.A, filt.B, filt.C, filt.D, 1.0), inputs)
    return np.asarray(out).reshape(inputs.shape[0], filt.n_outputs)


def run_trace(model: StateSpaceModel, filt: LtiFilter, trace: np.ndarray) -> np.ndarray:
    """Estimation errors of `filt` on one (w, v) trace, from zero initial states."""
    w, v = trace[:, : model.q], trace[:, model.q :]
    plant = LtiFilter(
        model.F,
        model.G,
        np.vstack([model.H, model.L]),
        np.zeros((model.m + model.p, model.q)),
        name="plant",
    )
    outputs = _run_filter(plant, w)
    y = outputs[:, : model.m] + v
    s = outputs[:, model.m :]
    return s - _run_filter(filt, y)


def burn_in_steps(filters: Mapping[str, LtiFilter], settings: Settings | None = None) -> int:
    """ceil(factor / (1 - rho_max)) over the filters' state matrices."""
    settings = settings or get_default_settings()
    rho = max((f.spectral_radius for f in filters.values()), default=0.0)
    return int(math.ceil(settings.simulation.burn_in_factor / (1.0 - rho)))


def simulate(
    model: StateSpaceModel,
    filters: Mapping[str, LtiFilter],
    spec: DisturbanceSpec,
    settings: Settings | None = None,
) -> SimResult:
    """Run every filter on the plant driven by `spec`.

    Gaussian and custom traces are shared by all filters. Adversarial traces
    are built per filter at its own worst frequency.

    Raises:
        DimensionMismatch: A filter does not map m observations to p estimates.
        UnstableOperator: A filter is not strictly stable.
    """
    settings = settings or get_default_settings()
    if not filters:
        raise ValidationError("simulate needs at least one filter")
    for name, filt in filters.items():
        check_filter_dims(model, filt)
        if not filt.is_stable():
            raise UnstableOperator(
                f"Filter '{name}' is not stable", f"rho = {filt.spectral_radius:.12g}"
            )
    shared = None if spec.kind == "adversarial" else generate(model, spec)

    errors, energies, running, dist = {}, {}, {}, {}
    for name, filt in filters.items():
        trace = (
            shared
            if shared is not None
            else worst_case_disturbance(model, filt, spec.horizon, spec.scale, settings)
        )
        e = run_trace(model, filt, trace)
        energy = np.sum(e * e, axis=1)
        errors[name] = e
        energies[name] = energy
        running[name] = np.cumsum(energy) / np.arange(1, spec.horizon + 1)
        dist[name] = np.sum(trace * trace, axis=1)

    result = SimResult(
        kind=spec.kind,
        names=tuple(filters),
        errors=errors,
        energies=energies,
        running_avg=running,
        disturbance_energy=dist,
        burn_in=burn_in_steps(filters, settings),
    )
    get_logger().info(
        f"Simulated {len(filters)} filters on a {spec.kind} trace",
        horizon=spec.horizon,
        final=result.final(),
    )
    return result


def plateau(result: SimResult, name: str) -> float:
    """Mean per-step error energy after burn-in (whole trace if shorter)."""
    energy = result.energies[name]
    tail = energy[result.burn_in :] if result.burn_in < energy.size else energy
    return float(np.mean(tail))


def energy_gain(result: SimResult, name: str) -> float:
    """sum e* e / sum (w* w + v* v) over the trace the filter saw."""
    total = float(np.sum(result.disturbance_energy[name]))
    return float(np.sum(result.energies[name])) / total if total > 0 else 0.0


def sim_text(result: SimResult) -> str:
    """CSV `t,avg_<name>...` with t starting at 1."""
    header = ["t"] + [f"avg_{name}" for name in result.names]
    columns = [result.running_avg[name] for name in result.names]
    rows = ([t + 1] + [float(c[t]) for c in columns] for t in range(result.horizon))
    return csv_text(header, rows)


def export_sim(result: SimResult, destination: str | Path) -> None:
    write_text_output(destination, sim_text(result))
