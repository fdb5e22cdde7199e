"""regret-filter observability.

This module offers:
- Dual-format logging (colored console + JSON files)
- Stage timing metrics for CLI reports
- Terminal formatters for tables and verification summaries

Example:
    from observability import configure, get_logger

    configure(log_dir=Path("logs"), level="DEBUG")
    logger = get_logger()
    logger.info("Synthesis started", model="scalar")
"""

from dataclasses import dataclass
from functools import cache
from pathlib import Path

DEFAULT_LOGGER_NAME = "regret_filter"


@dataclass
class _LoggingDefaults:
    log_dir: Path | None = None
    level: str = "WARNING"


_defaults = _LoggingDefaults()


def configure(log_dir: Path | str | None = None, level: str = "WARNING") -> None:
    """Set process-wide logging defaults and drop cached loggers.

    Args:
        log_dir: Directory for structured logs (None: console only).
        level: Console log level name.
    """
    _defaults.log_dir = Path(log_dir) if log_dir is not None else None
    _defaults.level = level
    get_logger.cache_clear()


@cache
def get_logger(
    name: str = DEFAULT_LOGGER_NAME,
    console_enabled: bool = True,
    json_enabled: bool = True,
) -> "FilterLogger":
    """Get or create logger instance (thread-safe).

    The same parameters always return the same instance until configure()
    or reset() is called.

    Args:
        name: Logger name.
        console_enabled: Enable colored console output.
        json_enabled: Enable JSON structured logging (only with a configured log_dir).

    Returns:
        FilterLogger instance.
    """
    from .logger import FilterLogger, LogLevel

    return FilterLogger(
        name=name,
        log_dir=_defaults.log_dir,
        console_enabled=console_enabled,
        json_enabled=json_enabled,
        console_level=LogLevel.parse(_defaults.level).value,
    )


def reset() -> None:
    """Reset logging defaults and cached loggers.

    Used primarily for testing to ensure clean state.
    """
    _defaults.log_dir = None
    _defaults.level = "WARNING"
    get_logger.cache_clear()


__all__ = [
    "DEFAULT_LOGGER_NAME",
    "configure",
    "get_logger",
    "reset",
]
