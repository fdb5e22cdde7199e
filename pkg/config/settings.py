"""Numerical settings for regret-filter.

Tolerances, iteration caps and grid sizes used across the solvers, the
synthesis pipeline, the frequency analysis and the simulation harness.
Settings load from sectioned YAML (see default.yaml); every section is optional.
"""

from dataclasses import dataclass, field, fields, is_dataclass
from pathlib import Path
from typing import Any

import yaml

from exceptions import ConfigurationError

RICCATI_METHODS = ("doubling", "fixed_point", "schur")


@dataclass
class SolverSettings:
    """Riccati and Stein solver settings.

    Attributes:
        tolerance: Relative update at which doubling / fixed-point iterations stop
        max_iterations: Iteration cap; overrunning it is a solver failure
        residual_tolerance: Relative Frobenius residual a Riccati solution must meet
        stein_residual_tolerance: Relative residual expected from Stein solves (logged if missed)
        methods: Riccati methods tried in order
        stability_margin: Spectral radius must stay below 1 - stability_margin
        kronecker_max_dim: Largest n solved by a direct Kronecker system
    """

    tolerance: float = 1e-13
    max_iterations: int = 10_000
    residual_tolerance: float = 1e-10
    stein_residual_tolerance: float = 1e-12
    methods: list[str] = field(default_factory=lambda: list(RICCATI_METHODS))
    stability_margin: float = 1e-9
    kronecker_max_dim: int = 8


@dataclass
class BisectionSettings:
    """Bisection settings for the regret level and the H-infinity level.

    Attributes:
        tolerance: Relative bracket width at which bisection stops
        max_iterations: Bisection step cap
        lower_ratio: Lower bracket as a fraction of the upper bracket
        growth_factor: Upper bracket growth when it is not feasible
        max_expansions: Number of upper bracket growth attempts
        monotone_slack: Relative slack of the monotonicity check on the record
    """

    tolerance: float = 1e-6
    max_iterations: int = 60
    lower_ratio: float = 1e-6
    growth_factor: float = 2.0
    max_expansions: int = 8
    monotone_slack: float = 1e-9


@dataclass
class GridSettings:
    """Frequency grid settings.

    Attributes:
        count: Default number of grid points (power of two, >= 64)
        max_count: Refinement cap for quadrature
        refine_tolerance: Relative change under grid doubling that ends refinement
        peak_xtol: Frequency tolerance of the local peak search
        chunk: Frequencies evaluated per batched solve
    """

    count: int = 2048
    max_count: int = 1 << 20
    refine_tolerance: float = 1e-6
    peak_xtol: float = 1e-10
    chunk: int = 4096


@dataclass
class SimulationSettings:
    """Time-domain simulation settings.

    Attributes:
        burn_in_factor: Burn-in is burn_in_factor / (1 - rho_max) steps
        seed: Default RNG seed
        horizon: Default number of steps
    """

    burn_in_factor: float = 10.0
    seed: int = 0
    horizon: int = 100_000


@dataclass
class ReproductionSettings:
    """Table reproduction settings.

    Attributes:
        table1_tolerance: Absolute tolerance of scalar-example cells
        table2_tolerance: Absolute tolerance of tracking-example cells
        delta_t: Sampling interval of the tracking model
        tracking_target: Tracking target behind table 2, "current" (L = [1, 0])
            or "next" (L = [1, delta_t])
    """

    table1_tolerance: float = 0.02
    table2_tolerance: float = 0.03
    delta_t: float = 1.0
    tracking_target: str = "current"


@dataclass
class Settings:
    """Complete settings bundle.

    Attributes:
        solver: Riccati / Stein solver settings
        bisection: Bisection settings
        grid: Frequency grid settings
        simulation: Simulation settings
        reproduction: Table reproduction settings
        log_level: Console log level
        log_dir: Directory for structured logs (None disables file logging)
    """

    solver: SolverSettings = field(default_factory=SolverSettings)
    bisection: BisectionSettings = field(default_factory=BisectionSettings)
    grid: GridSettings = field(default_factory=GridSettings)
    simulation: SimulationSettings = field(default_factory=SimulationSettings)
    reproduction: ReproductionSettings = field(default_factory=ReproductionSettings)
    log_level: str = "WARNING"
    log_dir: str | None = None


def _coerce(value: Any, default: Any, key: str) -> Any:
    """Check a YAML value against the type of its default."""
    if isinstance(default, bool):
        ok = isinstance(value, bool)
    elif isinstance(default, int):
        ok = isinstance(value, int) and not isinstance(value, bool)
    elif isinstance(default, float):
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
        value = float(value) if ok else value
    elif isinstance(default, list):
        ok = isinstance(value, list) and all(isinstance(v, str) for v in value)
    else:
        ok = value is None or isinstance(value, str)
    if not ok:
        raise ConfigurationError(
            f"Invalid value for '{key}'",
            f"expected {type(default).__name__}, got {type(value).__name__}",
        )
    return value


def _apply_section(target: Any, data: dict[str, Any], prefix: str) -> None:
    known = {f.name: f for f in fields(target)}
    for key, value in data.items():
        if key not in known:
            raise ConfigurationError("Unknown configuration key", f"{prefix}{key}")
        current = getattr(target, key)
        if is_dataclass(current):
            if not isinstance(value, dict):
                raise ConfigurationError(
                    "Configuration section must be a mapping", f"{prefix}{key}"
                )
            _apply_section(current, value, f"{prefix}{key}.")
        else:
            setattr(target, key, _coerce(value, current, f"{prefix}{key}"))


def settings_from_dict(data: dict[str, Any] | None) -> Settings:
    """Build settings from a parsed mapping, starting from defaults.

    Args:
        data: Mapping as produced by yaml.safe_load (None means defaults)

    Returns:
        Settings instance

    Raises:
        ConfigurationError: Unknown key, wrong type or unknown Riccati method
    """
    settings = Settings()
    if data is None:
        return settings
    if not isinstance(data, dict):
        raise ConfigurationError("Configuration root must be a mapping")
    _apply_section(settings, data, "")

    unknown = [m for m in settings.solver.methods if m not in RICCATI_METHODS]
    if unknown or not settings.solver.methods:
        raise ConfigurationError(
            "Invalid solver.methods", f"choose from {', '.join(RICCATI_METHODS)}"
        )
    if settings.grid.count < 64 or settings.grid.count & (settings.grid.count - 1):
        raise ConfigurationError("grid.count must be a power of two >= 64")
    if settings.reproduction.tracking_target not in ("next", "current"):
        raise ConfigurationError(
            "Invalid reproduction.tracking_target", "choose from next, current"
        )
    return settings


def load_settings(config_path: Path | str) -> Settings:
    """Load settings from a YAML file.

    Args:
        config_path: Path to a YAML file

    Returns:
        Settings instance

    Raises:
        ConfigurationError: Missing file, YAML syntax error or invalid values
    """
    path = Path(config_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read configuration file {path}", str(e)) from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in {path}", str(e)) from e
    return settings_from_dict(data)


# Default singleton instance
_default_settings: Settings | None = None


def get_default_settings() -> Settings:
    """Get the process-wide default settings.

    Returns:
        Default Settings instance
    """
    global _default_settings
    if _default_settings is None:
        _default_settings = Settings()
    return _default_settings


def set_default_settings(settings: Settings | None) -> None:
    """Replace the process-wide default settings (None restores built-in defaults)."""
    global _default_settings
    _default_settings = settings
