"""Utility modules for regret-filter."""

from .io_utils import (
    STDOUT,
    atomic_write,
    csv_text,
    format_float,
    json_text,
    to_jsonable,
    write_text_output,
)

__all__ = [
    "STDOUT",
    "atomic_write",
    "csv_text",
    "format_float",
    "json_text",
    "to_jsonable",
    "write_text_output",
]
