"""Run metrics for regret-filter.

Tracks how long each pipeline stage takes (Riccati solves, bisection,
quadrature, simulation) so CLI reports can embed timings.
"""

import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np


@dataclass
class StageTiming:
    """Record of a single timed stage.

    Attributes:
        stage: Stage name.
        duration_ms: Duration in milliseconds.
        success: Whether the stage finished without raising.
        error_type: Error type name if it raised.
    """

    stage: str
    duration_ms: float
    success: bool
    error_type: str | None = None

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "stage": self.stage,
            "duration_ms": self.duration_ms,
            "success": self.success,
            "error_type": self.error_type,
        }


class RunMetrics:
    """Collect stage timings for one run.

    Thread-safe: frequency sweeps may record from worker threads.

    Example:
        metrics = RunMetrics()
        with metrics.timer("bisection"):
            ...
        metrics.summary()["bisection"]["count"]
    """

    def __init__(self):
        self._timings: list[StageTiming] = []
        self._lock = threading.RLock()

    def record(
        self, stage: str, duration: float, success: bool, error: Exception | None = None
    ) -> None:
        """Record a stage duration given in seconds."""
        timing = StageTiming(
            stage=stage,
            duration_ms=duration * 1000.0,
            success=success,
            error_type=type(error).__name__ if error is not None else None,
        )
        with self._lock:
            self._timings.append(timing)

    @contextmanager
    def timer(self, stage: str):
        """Time a block and record it, also when it raises."""
        start = time.perf_counter()
        try:
            yield
        except Exception as e:
            self.record(stage, time.perf_counter() - start, False, e)
            raise
        self.record(stage, time.perf_counter() - start, True)

    @property
    def timings(self) -> list[StageTiming]:
        with self._lock:
            return list(self._timings)

    def stage_stats(self, stage: str) -> dict:
        """Summary statistics of one stage.

        Returns:
            Dictionary with count, failures, total_ms, mean_ms, p50_ms, p95_ms, max_ms.
        """
        with self._lock:
            runs = [t for t in self._timings if t.stage == stage]
        if not runs:
            return {
                "count": 0,
                "failures": 0,
                "total_ms": 0.0,
                "mean_ms": 0.0,
                "p50_ms": 0.0,
                "p95_ms": 0.0,
                "max_ms": 0.0,
            }
        durations = np.array([t.duration_ms for t in runs])
        return {
            "count": len(runs),
            "failures": sum(1 for t in runs if not t.success),
            "total_ms": float(durations.sum()),
            "mean_ms": float(durations.mean()),
            "p50_ms": float(np.percentile(durations, 50)),
            "p95_ms": float(np.percentile(durations, 95)),
            "max_ms": float(durations.max()),
        }

    def summary(self) -> dict[str, dict]:
        """Statistics for every recorded stage, in first-seen order."""
        with self._lock:
            stages = list(dict.fromkeys(t.stage for t in self._timings))
        return {stage: self.stage_stats(stage) for stage in stages}
