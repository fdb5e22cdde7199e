"""Checker framework for verifying synthesized filters.

Each checker tests one numerical property of a synthesis run against a shared
VerificationContext and returns a CheckerReport.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from exceptions import FilterError


class CheckResult(Enum):
    """Result of a checker execution."""

    PASS = "pass"
    FAIL = "fail"
    WARNING = "warning"
    SKIP = "skip"


@dataclass
class CheckerReport:
    """Report from a checker execution.

    Attributes:
        checker_name: Name of the checker that ran.
        result: Check result status.
        message: Human-readable result message.
        details: Additional details about the check.
        suggestions: List of suggestions if check failed.
        metadata: Measured values, targets and tolerances.
    """

    checker_name: str
    result: CheckResult
    message: str
    details: str = ""
    suggestions: list[str] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def is_pass(self) -> bool:
        return self.result == CheckResult.PASS

    def is_fail(self) -> bool:
        return self.result == CheckResult.FAIL

    def is_warning(self) -> bool:
        return self.result == CheckResult.WARNING

    def to_dict(self) -> dict:
        return {
            "checker": self.checker_name,
            "result": self.result.value,
            "message": self.message,
            "details": self.details,
            "suggestions": list(self.suggestions),
            "metadata": dict(self.metadata),
        }


class BaseChecker(ABC):
    """Base class for all checkers.

    Subclasses set `name`, `description` and `group` and implement check().
    """

    name: str = ""
    description: str = ""
    group: str = ""  # factorization, decomposition or certificate

    def __init__(self, context: Any):
        self.context = context

    @abstractmethod
    def check(self) -> CheckerReport:
        """Execute the check."""

    def _pass(self, message: str, details: str = "", **metadata) -> CheckerReport:
        return CheckerReport(
            checker_name=self.name,
            result=CheckResult.PASS,
            message=message,
            details=details,
            metadata=metadata,
        )

    def _fail(
        self,
        message: str,
        details: str = "",
        suggestions: list[str] | None = None,
        **metadata,
    ) -> CheckerReport:
        return CheckerReport(
            checker_name=self.name,
            result=CheckResult.FAIL,
            message=message,
            details=details,
            suggestions=suggestions or [],
            metadata=metadata,
        )

    def _warning(
        self,
        message: str,
        details: str = "",
        suggestions: list[str] | None = None,
        **metadata,
    ) -> CheckerReport:
        return CheckerReport(
            checker_name=self.name,
            result=CheckResult.WARNING,
            message=message,
            details=details,
            suggestions=suggestions or [],
            metadata=metadata,
        )

    def _skip(self, message: str, details: str = "", **metadata) -> CheckerReport:
        return CheckerReport(
            checker_name=self.name,
            result=CheckResult.SKIP,
            message=message,
            details=details,
            metadata=metadata,
        )

    def _bound(
        self, value: float, limit: float, what: str, suggestions: list[str] | None = None
    ) -> CheckerReport:
        """PASS when value <= limit, FAIL otherwise."""
        if value <= limit:
            return self._pass(f"{what} {value:.3e} <= {limit:.1e}", value=value, limit=limit)
        return self._fail(
            f"{what} {value:.3e} exceeds {limit:.1e}",
            suggestions=suggestions,
            value=value,
            limit=limit,
        )


class CheckerRegistry:
    """Registry of checker classes keyed by name and grouped by `group`."""

    def __init__(self):
        self._checkers: dict[str, type[BaseChecker]] = {}
        self._group_map: dict[str, list[str]] = {}

    def register(self, checker_cls: type[BaseChecker]) -> "CheckerRegistry":
        """Register a checker class; returns self for chaining."""
        name = checker_cls.name or checker_cls.__name__
        self._checkers[name] = checker_cls
        if checker_cls.group:
            self._group_map.setdefault(checker_cls.group, []).append(name)
        return self

    def get(self, name: str) -> type[BaseChecker] | None:
        return self._checkers.get(name)

    def get_for_group(self, group: str) -> list[type[BaseChecker]]:
        names = self._group_map.get(group, [])
        return [self._checkers[name] for name in names if name in self._checkers]

    def list_all(self) -> list[str]:
        return list(self._checkers.keys())

    def list_groups(self) -> list[str]:
        return list(self._group_map.keys())

    def run_check(self, name: str, context: Any) -> CheckerReport:
        """Run a single checker by name."""
        checker_cls = self._checkers.get(name)
        if not checker_cls:
            return CheckerReport(
                checker_name="Registry",
                result=CheckResult.FAIL,
                message=f"Checker '{name}' not found",
            )
        return _run_guarded(checker_cls, context)

    def run_group_checks(self, group: str, context: Any) -> list[CheckerReport]:
        return [_run_guarded(cls, context) for cls in self.get_for_group(group)]

    def run_all(self, context: Any) -> list[CheckerReport]:
        return [_run_guarded(cls, context) for cls in self._checkers.values()]


def _run_guarded(checker_cls: type[BaseChecker], context: Any) -> CheckerReport:
    """Run a checker; numerical exceptions become FAIL reports."""
    checker = checker_cls(context)
    try:
        return checker.check()
    except FilterError as e:
        return CheckerReport(
            checker_name=checker.name,
            result=CheckResult.FAIL,
            message=f"{type(e).__name__}: {e.message}",
            details=e.details or "",
        )
