"""Output formatters for the human-facing CLI reports."""

from collections.abc import Sequence


class OutputFormatter:
    """Format reports for terminal display.

    Example:
        formatter = OutputFormatter()
        print(formatter.banner("Table 1: scalar example"))
        print(formatter.status(True))
    """

    # ANSI color codes for terminal output
    COLORS = {
        "green": "\033[32m",
        "red": "\033[31m",
        "yellow": "\033[33m",
        "blue": "\033[34m",
        "bold": "\033[1m",
        "reset": "\033[0m",
    }

    def __init__(self, use_colors: bool = False):
        self.use_colors = use_colors

    def banner(self, title: str) -> str:
        """Title framed by '=' rules."""
        rule = "=" * 60
        return f"{rule}\n{self._colorize(title, 'bold')}\n{rule}"

    def status(self, passed: bool) -> str:
        """PASS / FAIL marker."""
        return self._colorize("✓ PASS", "green") if passed else self._colorize("✗ FAIL", "red")

    def format_timings(self, summary: dict[str, dict]) -> str:
        """Format RunMetrics.summary() output.

        Args:
            summary: Mapping stage -> stats dict.

        Returns:
            One line per stage.
        """
        if not summary:
            return "No timings recorded."
        lines = [self._colorize("Timings", "bold")]
        for stage, stats in summary.items():
            lines.append(
                f"  {stage}: {stats.get('count', 0)} run(s), "
                f"total {stats.get('total_ms', 0.0):.1f}ms, max {stats.get('max_ms', 0.0):.1f}ms"
            )
        return "\n".join(lines)

    def format_check_reports(self, reports: Sequence) -> str:
        """Format verification check reports (CheckerReport instances)."""
        if not reports:
            return "No checks run."
        lines = [self.banner("Verification"), ""]
        for report in reports:
            marker = {
                "pass": self._colorize("✓", "green"),
                "fail": self._colorize("✗", "red"),
                "warning": self._colorize("!", "yellow"),
            }.get(report.result.value, "○")
            lines.append(f"  {marker} {report.checker_name}: {report.message}")
        return "\n".join(lines)

    def _colorize(self, text: str, color: str) -> str:
        """Apply ANSI color to text when colors are enabled."""
        if not self.use_colors:
            return text
        color_code = self.COLORS.get(color, "")
        return f"{color_code}{text}{self.COLORS['reset']}"


class TableFormatter:
    """Format tabular data for terminal display.

    Example:
        formatter = TableFormatter()
        table = formatter.format_table(
            ["Estimator", "Frob^2"], [["Kalman", "0.60"]], [20, 10]
        )
    """

    def format_table(
        self,
        columns: Sequence[str],
        rows: Sequence[Sequence[str]],
        col_widths: Sequence[int],
    ) -> str:
        """Format rows under a header with fixed column widths.

        Args:
            columns: Column titles.
            rows: Cell strings, one sequence per row.
            col_widths: Width of each column.

        Returns:
            ASCII table.
        """
        lines = ["  ".join(col.ljust(w) for col, w in zip(columns, col_widths, strict=True))]
        lines.append("-" * sum(col_widths) + "-" * (len(col_widths) - 1) * 2)
        for cells in rows:
            lines.append(
                "  ".join(
                    cell[:w].ljust(w) for cell, w in zip(cells, col_widths, strict=True)
                ).rstrip()
            )
        return "\n".join(lines)
