"""CSV export of per-frequency curves."""

import csv
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from exceptions import ValidationError
from utils import csv_text, write_text_output

from .norms import NormReport

CURVE_COLUMNS = ("h2", "hinf", "regret_opt", "noncausal")
CURVE_QUANTITIES = ("operator", "regret")


def curves_text(reports: Sequence[NormReport], quantity: str = "operator") -> str:
    """CSV document `omega,<labels...>` for the requested curve.

    Columns follow the order h2, hinf, regret_opt, noncausal; only labels
    present in `reports` appear. An empty list yields the full header alone.

    Raises:
        ValidationError: Unknown quantity or label, duplicate labels, or
            reports sampled on different grids.
    """
    if quantity not in CURVE_QUANTITIES:
        raise ValidationError(f"Unknown curve quantity '{quantity}'", f"use {CURVE_QUANTITIES}")
    if not reports:
        return csv_text(("omega",) + CURVE_COLUMNS, [])
    by_label = {}
    for report in reports:
        if report.label not in CURVE_COLUMNS:
            raise ValidationError(f"Unknown curve label '{report.label}'", f"use {CURVE_COLUMNS}")
        if report.label in by_label:
            raise ValidationError(f"Duplicate curve label '{report.label}'")
        by_label[report.label] = report
    omegas = reports[0].omegas
    if any(not np.array_equal(r.omegas, omegas) for r in reports):
        raise ValidationError("Reports were sampled on different grids")
    labels = [label for label in CURVE_COLUMNS if label in by_label]
    columns = [omegas] + [by_label[label].curve(quantity) for label in labels]
    rows = ([float(c[k]) for c in columns] for k in range(omegas.size))
    return csv_text(["omega"] + labels, rows)


def export_curves(
    reports: Sequence[NormReport], destination: str | Path, quantity: str = "operator"
) -> None:
    """Write curves to a file, or to stdout for '-'."""
    write_text_output(destination, curves_text(reports, quantity))


def read_curves(path: str | Path) -> dict[str, np.ndarray]:
    """Parse an exported curve file back into columns by name."""
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise ValidationError(f"Empty curve file: {path}")
    header, body = rows[0], rows[1:]
    try:
        values = np.array([[float(cell) for cell in row] for row in body], dtype=float)
    except ValueError as e:
        raise ValidationError(f"Malformed curve file: {path}", str(e)) from e
    values = values.reshape(len(body), len(header))
    return {name: values[:, j] for j, name in enumerate(header)}
