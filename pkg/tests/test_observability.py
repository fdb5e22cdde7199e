"""Unit tests for observability system.

Tests the logger, run metrics and output formatters.
"""

import json
import time

import pytest

from checkers import CheckerReport, CheckResult
from observability import configure, get_logger, reset
from observability.formatters import OutputFormatter, TableFormatter
from observability.logger import JSONFormatter, LogLevel
from observability.metrics import RunMetrics


def _read_jsonl(log_dir, name="regret_filter"):
    path = log_dir / "structured" / f"{name}.jsonl"
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]


# ============================================================================
# Test Logger
# ============================================================================


class TestFilterLogger:
    """Test FilterLogger dual-format logging system."""

    def test_console_only_by_default(self):
        logger = get_logger()
        assert logger.log_dir is None
        assert logger.json_enabled is False

    def test_logger_is_cached(self):
        assert get_logger() is get_logger()

    def test_configure_drops_cache(self, tmp_path):
        before = get_logger()
        configure(log_dir=tmp_path / "logs", level="DEBUG")
        after = get_logger()
        assert after is not before
        assert after.log_dir == tmp_path / "logs"

    def test_logger_creates_directories(self, tmp_path):
        configure(log_dir=tmp_path / "logs")
        logger = get_logger()
        assert logger.log_dir.exists()
        assert logger.json_dir.exists()

    def test_info_with_context(self, tmp_path):
        configure(log_dir=tmp_path)
        get_logger().info("Synthesis finished", gamma_star=0.62)
        entries = _read_jsonl(tmp_path)
        assert entries[-1]["message"] == "Synthesis finished"
        assert entries[-1]["level"] == "INFO"
        assert entries[-1]["context"]["gamma_star"] == 0.62

    def test_log_solver_run(self, tmp_path):
        configure(log_dir=tmp_path)
        get_logger().log_solver_run("riccati_p", "doubling", iterations=7, residual=3e-16)
        context = _read_jsonl(tmp_path)[-1]["context"]
        assert context["event_type"] == "solver_run"
        assert context["method"] == "doubling"
        assert context["success"] is True

    def test_log_bisection_step(self, tmp_path):
        configure(log_dir=tmp_path)
        get_logger().log_bisection_step(0.7, None, False, failure="IndefiniteRQ")
        entry = _read_jsonl(tmp_path)[-1]
        assert entry["level"] == "DEBUG"
        assert "statistic=n/a" in entry["message"]
        assert entry["context"]["failure"] == "IndefiniteRQ"

    def test_log_command_failure_level(self, tmp_path):
        configure(log_dir=tmp_path)
        get_logger().log_command("synth", {"model": "builtin:scalar"}, 0.5, success=False)
        entry = _read_jsonl(tmp_path)[-1]
        assert entry["level"] == "ERROR"
        assert entry["context"]["command"] == "synth"

    def test_error_with_exception(self, tmp_path):
        configure(log_dir=tmp_path)
        try:
            raise ValueError("boom")
        except ValueError as e:
            get_logger().error("Failed", exception=e)
        assert "boom" in _read_jsonl(tmp_path)[-1]["exception"]

    def test_reset(self, tmp_path):
        configure(log_dir=tmp_path)
        reset()
        assert get_logger().log_dir is None


class TestFormattersAndLevels:
    def test_level_parse(self):
        assert LogLevel.parse("debug") is LogLevel.DEBUG
        assert LogLevel.parse("nonsense") is LogLevel.WARNING

    def test_json_sanitize(self):
        assert JSONFormatter._sanitize({"a": ["x\x00y"]}) == {"a": ["xy"]}


# ============================================================================
# Test Metrics
# ============================================================================


class TestRunMetrics:
    """Stage timings."""

    def test_timer_records(self):
        metrics = RunMetrics()
        with metrics.timer("bisection"):
            time.sleep(0.001)
        stats = metrics.stage_stats("bisection")
        assert stats["count"] == 1
        assert stats["failures"] == 0
        assert stats["total_ms"] > 0

    def test_timer_records_failure_and_reraises(self):
        metrics = RunMetrics()
        with pytest.raises(RuntimeError), metrics.timer("nehari"):
            raise RuntimeError("x")
        timing = metrics.timings[0]
        assert timing.success is False
        assert timing.error_type == "RuntimeError"

    def test_summary_order(self):
        metrics = RunMetrics()
        for stage in ("kalman", "bisection", "kalman"):
            metrics.record(stage, 0.01, True)
        summary = metrics.summary()
        assert list(summary) == ["kalman", "bisection"]
        assert summary["kalman"]["count"] == 2

    def test_empty_stage(self):
        assert RunMetrics().stage_stats("absent")["count"] == 0


# ============================================================================
# Test Output Formatters
# ============================================================================


class TestOutputFormatter:
    def test_status(self):
        formatter = OutputFormatter()
        assert formatter.status(True) == "✓ PASS"
        assert formatter.status(False) == "✗ FAIL"

    def test_colors_only_when_enabled(self):
        assert "\033[" in OutputFormatter(use_colors=True).status(True)
        assert "\033[" not in OutputFormatter().banner("Title")

    def test_format_check_reports(self):
        reports = [
            CheckerReport("split_sum", CheckResult.PASS, "ok"),
            CheckerReport("causality", CheckResult.FAIL, "leak"),
        ]
        text = OutputFormatter().format_check_reports(reports)
        assert "✓ split_sum: ok" in text
        assert "✗ causality: leak" in text

    def test_format_timings(self):
        text = OutputFormatter().format_timings({"kalman": {"count": 1, "total_ms": 2.0}})
        assert "kalman: 1 run(s)" in text
        assert OutputFormatter().format_timings({}) == "No timings recorded."


class TestTableFormatter:
    def test_format_table(self):
        table = TableFormatter().format_table(
            ["Estimator", "Frob^2"], [["H2", "0.60"], ["Noncausal", "0.46"]], [10, 6]
        )
        lines = table.splitlines()
        assert lines[0].startswith("Estimator")
        assert set(lines[1]) == {"-"}
        assert lines[2] == "H2          0.60"
        assert len(lines) == 4
