"""Named registry of in-memory tables and trained models.

Lookups are case-insensitive. The catalog is a single-writer resource:
statement execution is serialized by the engine, so no internal locking
is needed here.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .errors import CatalogError, UnknownNameError
from .table import Table

if TYPE_CHECKING:
    from .artifact import ModelArtifact


class Catalog:
    def __init__(self):
        self._tables: dict[str, Table] = {}
        self._models: dict[str, "ModelArtifact"] = {}

    # --- tables -------------------------------------------------------------

    def register_table(self, table: Table, replace: bool = False) -> None:
        key = table.name.lower()
        if key in self._tables and not replace:
            raise CatalogError(f"table '{table.name}' already exists (use OR REPLACE)")
        self._tables[key] = table

    def table(self, name: str) -> Table:
        try:
            return self._tables[name.lower()]
        except KeyError:
            raise UnknownNameError(f"unknown table '{name}'") from None

    def has_table(self, name: str) -> bool:
        return name.lower() in self._tables

    def table_names(self) -> list[str]:
        return sorted(t.name for t in self._tables.values())

    def drop_table(self, name: str) -> None:
        try:
            del self._tables[name.lower()]
        except KeyError:
            raise UnknownNameError(f"unknown table '{name}'") from None

    # --- models -------------------------------------------------------------

    def register_model(self, artifact: "ModelArtifact", replace: bool = False) -> None:
        key = artifact.name.lower()
        if key in self._models and not replace:
            raise CatalogError(f"model '{artifact.name}' already exists (use OR REPLACE)")
        self._models[key] = artifact

    def model(self, name: str) -> "ModelArtifact":
        try:
            return self._models[name.lower()]
        except KeyError:
            raise UnknownNameError(f"unknown model '{name}'") from None

    def has_model(self, name: str) -> bool:
        return name.lower() in self._models

    def model_names(self) -> list[str]:
        return sorted(m.name for m in self._models.values())
