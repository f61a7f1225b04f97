"""CSV ingestion and export.

Dialect: comma delimiter, ``"`` quoting with ``""`` escape, first row is the
header, empty field means NULL, UTF-8 text.

Schema inference per column: INT64 if every non-empty field parses as a
decimal integer, else FLOAT64 if every non-empty field parses as a decimal
real, else STRING. A header-only file yields all-STRING columns.
"""

from __future__ import annotations

import csv
import re
from pathlib import Path

from .errors import CsvError, IoError
from .table import ColumnType, Table

_INT_RE = re.compile(r"^[+-]?[0-9]+$")
_FLOAT_RE = re.compile(r"^[+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?$")


def infer_column_type(fields: list[str]) -> ColumnType:
    """Infer the type of one column from its raw non-empty field texts."""
    non_empty = [f for f in fields if f != ""]
    if not non_empty:
        return ColumnType.STRING
    if all(_INT_RE.match(f) for f in non_empty):
        return ColumnType.INT64
    if all(_FLOAT_RE.match(f) for f in non_empty):
        return ColumnType.FLOAT64
    return ColumnType.STRING


def _convert(field: str, ctype: ColumnType):
    if field == "":
        return None
    if ctype is ColumnType.INT64:
        return int(field)
    if ctype is ColumnType.FLOAT64:
        return float(field)
    return field


def load_csv(path: str | Path, table_name: str) -> Table:
    """Read a CSV file into a new table. Does not touch any catalog."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                rows = list(reader)
            except csv.Error as exc:
                raise CsvError(f"bad CSV quoting: {exc}", reader.line_num) from exc
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc

    if not rows:
        raise CsvError("missing header row", 1)
    header = rows[0]
    width = len(header)
    raw_columns: list[list[str]] = [[] for _ in range(width)]
    for row_num, row in enumerate(rows[1:], start=2):
        if not row:
            row = [""]  # blank line = one empty field (csv.writer symmetry)
        if len(row) != width:
            raise CsvError(f"ragged row: {len(row)} fields, expected {width}", row_num)
        for col, field in zip(raw_columns, row):
            col.append(field)

    types = [infer_column_type(col) for col in raw_columns]
    cells = [[_convert(f, t) for f in col] for col, t in zip(raw_columns, types)]
    return Table(table_name, list(zip(header, types)), cells)


def _render(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(table: Table, path: str | Path) -> None:
    """Write a table to CSV so that reloading reproduces the cells exactly."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(table.column_names)
            for row in table.iter_rows():
                writer.writerow([_render(v) for v in row])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
