"""In-memory columnar tables.

A :class:`Table` stores values column-major as plain Python objects:
``int`` for INT64 cells, ``float`` for FLOAT64, ``str`` for STRING, and
``None`` for NULL. Column names are unique case-insensitively and lookups
are case-insensitive.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Iterator, Sequence

from .errors import SchemaError, UnknownNameError


class ColumnType(str, Enum):
    INT64 = "INT64"
    FLOAT64 = "FLOAT64"
    STRING = "STRING"


def _conforms(value: Any, ctype: ColumnType) -> bool:
    if value is None:
        return True
    if ctype is ColumnType.INT64:
        return isinstance(value, int) and not isinstance(value, bool)
    if ctype is ColumnType.FLOAT64:
        return isinstance(value, float)
    return isinstance(value, str)


class Table:
    """Named relation with typed, nullable, column-major storage."""

    def __init__(
        self,
        name: str,
        columns: Sequence[tuple[str, ColumnType]],
        cells: Sequence[list],
    ):
        if len(columns) != len(cells):
            raise SchemaError(f"table '{name}': {len(columns)} columns but {len(cells)} cell lists")
        seen = set()
        for col_name, _ in columns:
            key = col_name.lower()
            if key in seen:
                raise SchemaError(f"table '{name}': duplicate column '{col_name}'")
            seen.add(key)
        row_count = len(cells[0]) if cells else 0
        for (col_name, _), col in zip(columns, cells):
            if len(col) != row_count:
                raise SchemaError(
                    f"table '{name}': column '{col_name}' has {len(col)} cells, expected {row_count}"
                )
        self.name = name
        self.columns = [(n, ColumnType(t)) for n, t in columns]
        self.cells = [list(c) for c in cells]
        self._index = {n.lower(): i for i, (n, _) in enumerate(self.columns)}

    # --- shape ------------------------------------------------------------

    @property
    def row_count(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    @property
    def column_names(self) -> list[str]:
        return [n for n, _ in self.columns]

    def __len__(self) -> int:
        return self.row_count

    def __repr__(self) -> str:
        cols = ", ".join(f"{n} {t.value}" for n, t in self.columns)
        return f"Table({self.name!r}, [{cols}], rows={self.row_count})"

    # --- access -------------------------------------------------------------

    def has_column(self, name: str) -> bool:
        return name.lower() in self._index

    def column_position(self, name: str) -> int:
        try:
            return self._index[name.lower()]
        except KeyError:
            raise UnknownNameError(f"table '{self.name}' has no column '{name}'") from None

    def column_type(self, name: str) -> ColumnType:
        return self.columns[self.column_position(name)][1]

    def column(self, name: str) -> list:
        return self.cells[self.column_position(name)]

    def row(self, i: int) -> tuple:
        return tuple(col[i] for col in self.cells)

    def iter_rows(self) -> Iterator[tuple]:
        return (self.row(i) for i in range(self.row_count))

    # --- derivation ---------------------------------------------------------

    def take(self, indices: Sequence[int], name: str | None = None) -> "Table":
        """New table holding the given rows, in the given order."""
        cells = [[col[i] for i in indices] for col in self.cells]
        return Table(name if name is not None else self.name, self.columns, cells)

    def rename(self, name: str) -> "Table":
        return Table(name, self.columns, self.cells)

    def check_cells(self) -> None:
        """Verify every cell conforms to its column type (debug/ingest aid)."""
        for (col_name, ctype), col in zip(self.columns, self.cells):
            for i, v in enumerate(col):
                if not _conforms(v, ctype):
                    raise SchemaError(
                        f"table '{self.name}': cell {col_name}[{i}] = {v!r} does not conform to {ctype.value}"
                    )

    def same_cells(self, other: "Table") -> bool:
        return self.columns == other.columns and self.cells == other.cells
