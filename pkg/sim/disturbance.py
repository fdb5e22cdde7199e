"""Disturbance traces (w, v) for time-domain experiments."""

from dataclasses import dataclass

import numpy as np

from config import Settings, get_default_settings
from exceptions import DimensionMismatch, ValidationError
from state_space import LtiFilter, StateSpaceModel

DISTURBANCE_KINDS = ("gaussian", "adversarial", "custom-trace")
KIND_ALIASES = {"custom": "custom-trace"}
_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class DisturbanceSpec:
    """How to drive the plant.

    Attributes:
        kind: "gaussian", "adversarial" or "custom-trace" ("custom" is accepted).
        horizon: Number of steps.
        seed: Seed of the Philox generator (gaussian traces).
        scale: Standard deviation (gaussian) or RMS level (adversarial).
        trace: horizon x (q + m) samples for custom traces, columns (w, v).
    """

    kind: str = "gaussian"
    horizon: int = 100_000
    seed: int = 0
    scale: float = 1.0
    trace: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", KIND_ALIASES.get(self.kind, self.kind))
        if self.kind not in DISTURBANCE_KINDS:
            raise ValidationError(
                f"Unknown disturbance kind '{self.kind}'", f"use one of {DISTURBANCE_KINDS}"
            )
        if isinstance(self.horizon, bool) or not isinstance(self.horizon, (int, np.integer)):
            raise ValidationError("horizon must be an integer", f"got {self.horizon!r}")
        if self.horizon < 1:
            raise ValidationError("horizon must be at least 1", f"got {self.horizon}")
        if not 0 <= int(self.seed) < _SEED_LIMIT:
            raise ValidationError("seed must fit in 64 unsigned bits", f"got {self.seed}")
        if not np.isfinite(self.scale) or self.scale < 0:
            raise ValidationError("scale must be finite and nonnegative", f"got {self.scale}")
        if self.kind == "custom-trace":
            if self.trace is None:
                raise ValidationError("custom disturbances need a trace")
            trace = np.asarray(self.trace, dtype=float)
            if trace.ndim != 2 or trace.shape[0] != self.horizon:
                raise DimensionMismatch(
                    "custom trace must be horizon x (q + m)", f"got shape {trace.shape}"
                )
            if not np.all(np.isfinite(trace)):
                raise ValidationError("custom trace has non-finite samples")
            object.__setattr__(self, "trace", trace)

    @classmethod
    def from_settings(cls, kind: str, settings: Settings | None = None, **overrides):
        settings = settings or get_default_settings()
        values = {"horizon": settings.simulation.horizon, "seed": settings.simulation.seed}
        values.update(overrides)
        return cls(kind=kind, **values)


def generate(model: StateSpaceModel, spec: DisturbanceSpec) -> np.ndarray:
    """Shared trace of shape (horizon, q + m) for gaussian and custom specs.

    Gaussian samples come from numpy's counter-based Philox generator, so a
    seed reproduces the trace on every platform.
    """
    width = model.q + model.m
    if spec.kind == "gaussian":
        rng = np.random.Generator(np.random.Philox(int(spec.seed)))
        return spec.scale * rng.standard_normal((spec.horizon, width))
    if spec.kind == "custom-trace":
        if spec.trace.shape[1] != width:
            raise DimensionMismatch(
                "custom trace width differs from q + m", f"got {spec.trace.shape[1]}, need {width}"
            )
        return spec.trace
    raise ValidationError("adversarial traces depend on the filter; use worst_case_disturbance")


def worst_case_disturbance(
    model: StateSpaceModel,
    filt: LtiFilter,
    horizon: int,
    scale: float = 1.0,
    settings: Settings | None = None,
) -> np.ndarray:
    """Sinusoid at the filter's worst frequency along the worst input direction.

    At w* = 0 or pi the trace is a real vector times cos(w* t); elsewhere it is
    Re(v e^{j w* t}) with v the leading right singular vector of T_K(e^{j w*}).
    The trace is rescaled so its mean per-step energy is exactly scale^2.
    """
    from analysis import error_operator_batch, operator_norm_sq

    if horizon < 1:
        raise ValidationError("horizon must be at least 1", f"got {horizon}")
    settings = settings or get_default_settings()
    _, omega = operator_norm_sq(model, filt, settings=settings)
    sample = error_operator_batch(model, filt, omega, settings)[0]
    _, _, Vh = np.linalg.svd(sample)
    v = Vh[0].conj()
    t = np.arange(horizon)[:, None]
    if np.isclose(np.sin(omega), 0.0, atol=1e-8):
        # T_K is real here, so v is real up to a phase
        k = int(np.argmax(np.abs(v)))
        real = np.real(v * np.exp(-1j * np.angle(v[k])))
        real /= np.linalg.norm(real)
        trace = real[None, :] * np.cos(omega * t)
    else:
        trace = np.real(v[None, :] * np.exp(1j * omega * t))
    rms = np.sqrt(np.mean(np.sum(trace * trace, axis=1)))
    return scale * trace / rms if rms > 0 else trace
