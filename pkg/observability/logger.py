"""Dual-format logging system for regret-filter.

Provides colored console output for humans and JSON logs for machine consumption.
"""

import json
import logging
import re
from datetime import datetime
from enum import Enum
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any


class LogLevel(Enum):
    """Log level enumeration."""

    DEBUG = logging.DEBUG
    INFO = logging.INFO
    WARNING = logging.WARNING
    ERROR = logging.ERROR
    CRITICAL = logging.CRITICAL

    @classmethod
    def parse(cls, name: str) -> "LogLevel":
        """Parse a level name case-insensitively (unknown names map to WARNING)."""
        return cls.__members__.get(name.upper(), cls.WARNING)


class ColoredFormatter(logging.Formatter):
    """Terminal formatter with ANSI colors.

    Color mapping:
    - DEBUG: Cyan
    - INFO: Green
    - WARNING: Yellow
    - ERROR: Red
    - CRITICAL: Magenta
    """

    # ANSI color codes
    COLORS = {
        logging.DEBUG: "\033[36m",  # Cyan
        logging.INFO: "\033[32m",  # Green
        logging.WARNING: "\033[33m",  # Yellow
        logging.ERROR: "\033[31m",  # Red
        logging.CRITICAL: "\033[35m",  # Magenta
    }
    RESET = "\033[0m"

    def __init__(self, fmt: str | None = None, datefmt: str | None = None, use_colors: bool = True):
        """Initialize colored formatter.

        Args:
            fmt: Log message format string.
            datefmt: Date format string.
            use_colors: Enable colored output.
        """
        super().__init__(fmt, datefmt)
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with optional colors.

        The record is copied so that handlers formatting after this one
        (the JSON and text file handlers) still see the plain level name.
        """
        if self.use_colors:
            record = logging.makeLogRecord(record.__dict__)
            level_color = self.COLORS.get(record.levelno, "")
            record.levelname = f"{level_color}{record.levelname}{self.RESET}"
        return super().format(record)


class JSONFormatter(logging.Formatter):
    """JSON formatter for structured logs.

    Produces newline-delimited JSON (JSONL). Each entry includes:
    - timestamp: ISO 8601 timestamp
    - level: Log level name
    - message: Log message (sanitized)
    - logger: Logger name
    - context: Additional metadata from the log call
    """

    # Control characters to remove (all except \n, \r, \t)
    _CONTROL_CHARS_PATTERN = re.compile(r"[\x00-\x08\x0b\x0c\x0e-\x1f]")

    _STANDARD_ATTRS = frozenset(
        {
            "name",
            "msg",
            "args",
            "levelname",
            "levelno",
            "pathname",
            "filename",
            "module",
            "lineno",
            "funcName",
            "created",
            "msecs",
            "relativeCreated",
            "thread",
            "threadName",
            "processName",
            "process",
            "taskName",
            "getMessage",
            "exc_info",
            "exc_text",
            "stack_info",
            "asctime",
            "message",
        }
    )

    @staticmethod
    def _sanitize(value: Any) -> Any:
        """Remove control characters from strings, recursively through containers."""
        if isinstance(value, str):
            return JSONFormatter._CONTROL_CHARS_PATTERN.sub("", value)
        elif isinstance(value, (list, tuple)):
            return type(value)(JSONFormatter._sanitize(v) for v in value)
        elif isinstance(value, dict):
            return {k: JSONFormatter._sanitize(v) for k, v in value.items()}
        return value

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as a single JSON line."""
        log_entry = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": logging.getLevelName(record.levelno),
            "logger": record.name,
            "message": self._sanitize(record.getMessage()),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_entry["exception"] = self._sanitize(self.formatException(record.exc_info))

        context = {
            key: self._sanitize(value)
            for key, value in record.__dict__.items()
            if key not in self._STANDARD_ATTRS and not key.startswith("_")
        }
        if context:
            log_entry["context"] = context

        # numpy scalars and arrays fall back to str
        return json.dumps(log_entry, ensure_ascii=False, default=str)


class FilterLogger:
    """Dual-format logger with colored console and JSON file output.

    Features:
    - Colored console output on stderr
    - JSON structured logs when a log directory is given
    - Automatic log rotation (10MB max, 5 backups)
    - Context metadata support

    Example:
        logger = get_logger("regret_filter", log_dir)

        logger.info("Synthesis finished", gamma_star=0.62)
        logger.log_solver_run("riccati_p", "doubling", iterations=7, residual=3e-16)
        logger.log_bisection_step(gamma=0.7, statistic=0.61, feasible=True)
    """

    def __init__(
        self,
        name: str,
        log_dir: Path | None = None,
        console_enabled: bool = True,
        json_enabled: bool = True,
        console_level: int = logging.WARNING,
        max_file_size: int = 10_000_000,  # 10MB
        backup_count: int = 5,
    ):
        """Initialize dual-format logger.

        Args:
            name: Logger name.
            log_dir: Directory for log files. None disables file output.
            console_enabled: Enable colored console output.
            json_enabled: Enable JSON file logging (requires log_dir).
            console_level: Minimum level shown on the console.
            max_file_size: Maximum size of each log file before rotation.
            backup_count: Number of backup files to keep.
        """
        self.name = name
        self.log_dir = Path(log_dir) if log_dir is not None else None
        self.console_enabled = console_enabled
        self.json_enabled = json_enabled and self.log_dir is not None

        self._logger = logging.getLogger(name)
        self._logger.setLevel(logging.DEBUG)
        self._logger.handlers.clear()
        self._logger.propagate = False

        if console_enabled:
            console_handler = logging.StreamHandler()
            console_handler.setLevel(console_level)
            console_handler.setFormatter(
                ColoredFormatter(
                    fmt="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                    use_colors=True,
                )
            )
            self._logger.addHandler(console_handler)

        if self.json_enabled and self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            self.json_dir = self.log_dir / "structured"
            self.json_dir.mkdir(exist_ok=True)

            json_handler = RotatingFileHandler(
                self.json_dir / f"{name}.jsonl",
                maxBytes=max_file_size,
                backupCount=backup_count,
                encoding="utf-8",
            )
            json_handler.setLevel(logging.DEBUG)
            json_handler.setFormatter(JSONFormatter())
            self._logger.addHandler(json_handler)

            text_handler = RotatingFileHandler(
                self.log_dir / f"{name}.log",
                maxBytes=max_file_size,
                backupCount=backup_count,
                encoding="utf-8",
            )
            text_handler.setLevel(logging.INFO)
            text_handler.setFormatter(
                logging.Formatter(
                    fmt="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            self._logger.addHandler(text_handler)

    def debug(self, message: str, **context) -> None:
        """Log DEBUG message with optional context."""
        self._logger.debug(message, extra=context)

    def info(self, message: str, **context) -> None:
        """Log INFO message with optional context."""
        self._logger.info(message, extra=context)

    def warning(self, message: str, **context) -> None:
        """Log WARNING message with optional context."""
        self._logger.warning(message, extra=context)

    def error(self, message: str, exception: Exception | None = None, **context) -> None:
        """Log ERROR message with optional exception and context.

        Args:
            message: Log message.
            exception: Exception object (will include stack trace).
            **context: Additional metadata for JSON logs.
        """
        if exception:
            self._logger.error(
                message,
                exc_info=(type(exception), exception, exception.__traceback__),
                extra=context,
            )
        else:
            self._logger.error(message, extra=context)

    def critical(self, message: str, **context) -> None:
        """Log CRITICAL message with optional context."""
        self._logger.critical(message, extra=context)

    def log_solver_run(
        self,
        equation: str,
        method: str,
        iterations: int,
        residual: float,
        success: bool = True,
    ) -> None:
        """Structured logging for a Riccati solve.

        Args:
            equation: Which equation was solved (e.g. "riccati_q").
            method: Method that produced the accepted (or last rejected) candidate.
            iterations: Iterations spent by that method.
            residual: Relative Frobenius residual of the candidate.
            success: Whether the candidate was accepted.
        """
        # Rejections are routine during bisection: fallbacks handle them
        level = logging.DEBUG if success else logging.INFO
        status = "accepted" if success else "rejected"
        self._logger.log(
            level,
            f"Riccati {equation}: {method} {status} after {iterations} iterations "
            f"(residual {residual:.2e})",
            extra={
                "equation": equation,
                "method": method,
                "iterations": iterations,
                "residual": float(residual),
                "success": success,
                "event_type": "solver_run",
            },
        )

    def log_bisection_step(
        self,
        gamma: float,
        statistic: float | None,
        feasible: bool,
        search: str = "regret",
        failure: str | None = None,
    ) -> None:
        """Structured logging for one bisection probe.

        Args:
            gamma: Level probed.
            statistic: Existence statistic at this level (None if a solve failed).
            feasible: Whether the level was accepted.
            search: Which bisection ("regret" or "hinf").
            failure: Name of the solver error that made the level infeasible.
        """
        stat_text = "n/a" if statistic is None else f"{statistic:.9g}"
        self._logger.debug(
            f"Bisection[{search}] gamma={gamma:.9g} statistic={stat_text} "
            f"{'feasible' if feasible else 'infeasible'}",
            extra={
                "search": search,
                "gamma": float(gamma),
                "statistic": statistic,
                "feasible": feasible,
                "failure": failure,
                "event_type": "bisection_step",
            },
        )

    def log_command(
        self,
        command: str,
        args: dict,
        duration: float,
        success: bool,
        result: str = "",
    ) -> None:
        """Structured logging for a CLI command.

        Args:
            command: Subcommand name.
            args: Parsed arguments.
            duration: Execution duration in seconds.
            success: Whether the command succeeded.
            result: Short result summary.
        """
        level = logging.INFO if success else logging.ERROR
        status = "SUCCESS" if success else "FAILED"
        self._logger.log(
            level,
            f"Command {status}: {command} ({duration:.2f}s)",
            extra={
                "command": command,
                "command_args": args,
                "command_result": result[:500],
                "duration_seconds": duration,
                "success": success,
                "event_type": "command",
            },
        )

    @property
    def logger(self) -> logging.Logger:
        """Get the underlying Python logger."""
        return self._logger
