"""File output helpers for regret-filter reports.

All text output is UTF-8 without BOM and uses LF line endings regardless of
platform, so exported CSV and JSON are byte-identical across machines.
"""

import json
import math
import os
import sys
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

STDOUT = "-"


def atomic_write(filepath: Path, content: str, encoding: str = "utf-8") -> None:
    """Atomically write content to a file.

    Writes to a temporary file in the target directory, syncs it to disk and
    renames it over the target, so readers see either the old or the new
    content, never a partial file.

    Args:
        filepath: Target file path to write to.
        content: Content to write.
        encoding: File encoding (default: utf-8).

    Raises:
        OSError: If write or rename operation fails.
    """
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)

    with tempfile.NamedTemporaryFile(
        mode="w",
        dir=filepath.parent,
        prefix=f".{filepath.name}.",
        suffix=".tmp",
        encoding=encoding,
        newline="",
        delete=False,
    ) as tmp_file:
        tmp_path = Path(tmp_file.name)
        tmp_file.write(content)
        tmp_file.flush()
        try:
            os.fsync(tmp_file.fileno())
        except (OSError, AttributeError):
            # fsync may not be available on all platforms
            pass

    tmp_path.replace(filepath)


def write_text_output(destination: str | Path, content: str) -> None:
    """Write content to a path, or to stdout when destination is '-'."""
    if str(destination) == STDOUT:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    atomic_write(Path(destination), content)


def format_float(value: float) -> str:
    """17 significant digits, enough to reload any double exactly."""
    return f"{float(value):.17g}"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render a CSV document with LF line endings.

    Floats are written with format_float; other cells with str().
    """
    lines = [",".join(header)]
    for row in rows:
        cells = [
            format_float(cell) if isinstance(cell, (float, np.floating)) else str(cell)
            for cell in row
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def to_jsonable(value: Any) -> Any:
    """Convert numpy arrays and scalars into plain JSON values.

    Real matrices become nested lists. Non-finite floats become None so the
    document stays valid JSON.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            value = np.real_if_close(value)
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def json_text(document: Any) -> str:
    """Serialize a report document; floats keep their shortest exact repr."""
    return json.dumps(to_jsonable(document), indent=2, ensure_ascii=False) + "\n"
