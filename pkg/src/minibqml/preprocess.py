"""Automatic feature pipeline: imputation, standardization, one-hot encoding.

:class:`TableVectorizer` is fitted on the training table and turns any
schema-compatible table into a dense float64 design matrix:

* numeric features: NULL -> fitted mean, then optional (x - mean) / stddev
  scaling with population (divide-by-n) stddev, recorded as 1.0 for
  constant columns so the transform stays total;
* categorical features: one-hot over the fitted vocabulary plus one
  reserved MISSING bucket that catches NULLs and unseen values.

STRING columns are always categorical. INT64 columns with at most
``max_categorical_levels`` distinct non-null values are treated as
categorical (binary flags and small ordinal codes); wider INT64 columns
and all FLOAT64 columns stay numeric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .errors import EmptyInputError, LabelError, SchemaError
from .table import ColumnType, Table

MISSING_BUCKET = "__MISSING__"

STANDARDIZED_MODEL_TYPES = frozenset({"logistic_reg", "dnn_classifier"})


def standardize_for_model_type(model_type: str) -> bool:
    """Tree ensembles consume raw feature values; linear and neural models
    get zero-mean unit-variance inputs."""
    return model_type in STANDARDIZED_MODEL_TYPES


@dataclass(frozen=True)
class FeatureSpan:
    """Where one source column lands in the design matrix."""

    column: str
    ctype: ColumnType
    kind: str  # "numeric" | "categorical"
    start: int
    width: int


class TableVectorizer(BaseEstimator, TransformerMixin):
    """Fit on a training table, transform tables into design matrices."""

    def __init__(self, label_col: str | None = None, standardize: bool = True,
                 max_categorical_levels: int = 13):
        self.label_col = label_col
        self.standardize = standardize
        self.max_categorical_levels = max_categorical_levels

    @classmethod
    def for_model_type(cls, label_col: str, model_type: str) -> "TableVectorizer":
        return cls(label_col=label_col, standardize=standardize_for_model_type(model_type))

    # --- fitting ------------------------------------------------------------

    def fit(self, table: Table, y=None) -> "TableVectorizer":
        if self.label_col is None:
            raise LabelError("label_col must be set before fitting")
        if not table.has_column(self.label_col):
            raise LabelError(f"label column '{self.label_col}' not found")
        if table.row_count == 0:
            raise EmptyInputError("cannot fit a preprocessor on 0 rows")
        label_type = table.column_type(self.label_col)
        if label_type is ColumnType.STRING:
            raise LabelError(f"label column '{self.label_col}' must be numeric")
        labels = {v for v in table.column(self.label_col) if v is not None}
        if not labels <= {0, 1, 0.0, 1.0}:
            raise LabelError(f"label column '{self.label_col}' must contain only 0/1")
        if len(labels) < 2:
            raise LabelError(f"label column '{self.label_col}' has a single class")

        label_key = self.label_col.lower()
        numeric_stats: dict[str, tuple[float, float, float]] = {}
        vocabularies: dict[str, list] = {}
        spans: list[FeatureSpan] = []
        offset = 0
        for name, ctype in table.columns:
            if name.lower() == label_key:
                continue
            cells = table.column(name)
            if self._is_categorical(ctype, cells):
                vocab = sorted({v for v in cells if v is not None})
                vocabularies[name] = vocab
                width = len(vocab) + 1  # MISSING bucket last
                spans.append(FeatureSpan(name, ctype, "categorical", offset, width))
            else:
                observed = [float(v) for v in cells if v is not None]
                if observed:
                    mean = float(np.mean(observed))
                    std = float(np.std(observed))  # population stddev
                else:
                    mean, std = 0.0, 0.0
                if std == 0.0:
                    std = 1.0
                numeric_stats[name] = (mean, std, mean)
                width = 1
                spans.append(FeatureSpan(name, ctype, "numeric", offset, width))
            offset += width

        self.numeric_stats_ = numeric_stats
        self.vocabularies_ = vocabularies
        self.feature_layout_ = spans
        self.output_width_ = offset
        self.feature_names_out_ = self._feature_names(spans, vocabularies)
        return self

    def _is_categorical(self, ctype: ColumnType, cells: list) -> bool:
        if ctype is ColumnType.STRING:
            return True
        if ctype is ColumnType.INT64:
            distinct = {v for v in cells if v is not None}
            return len(distinct) <= self.max_categorical_levels
        return False

    @staticmethod
    def _feature_names(spans: list[FeatureSpan], vocabularies: dict[str, list]) -> list[str]:
        names = []
        for span in spans:
            if span.kind == "numeric":
                names.append(span.column)
            else:
                names.extend(f"{span.column}={v}" for v in vocabularies[span.column])
                names.append(f"{span.column}={MISSING_BUCKET}")
        return names

    # --- transforming ---------------------------------------------------------

    def _check_fitted(self) -> None:
        if not hasattr(self, "feature_layout_"):
            raise NotFittedError("TableVectorizer is not fitted")

    def _check_schema(self, table: Table) -> None:
        for span in self.feature_layout_:
            if not table.has_column(span.column):
                raise SchemaError(f"missing column '{span.column}'")
            if table.column_type(span.column) is not span.ctype:
                raise SchemaError(
                    f"column '{span.column}' is {table.column_type(span.column).value}, "
                    f"expected {span.ctype.value}"
                )

    def transform(self, table: Table) -> np.ndarray:
        """Dense (rows x output_width_) float64 design matrix."""
        self._check_fitted()
        self._check_schema(table)
        n = table.row_count
        X = np.zeros((n, self.output_width_), dtype=np.float64)
        for span in self.feature_layout_:
            cells = table.column(span.column)
            if span.kind == "numeric":
                mean, std, impute = self.numeric_stats_[span.column]
                col = np.array([impute if v is None else float(v) for v in cells])
                if self.standardize:
                    col = (col - mean) / std
                X[:, span.start] = col
            else:
                index = {v: i for i, v in enumerate(self.vocabularies_[span.column])}
                missing = span.width - 1
                hot = np.array([index.get(v, missing) if v is not None else missing for v in cells])
                X[np.arange(n), span.start + hot] = 1.0
        return X

    def label_vector(self, table: Table) -> np.ndarray | None:
        """0/1 labels as float64, or None when the label column is absent."""
        self._check_fitted()
        if self.label_col is None or not table.has_column(self.label_col):
            return None
        cells = table.column(self.label_col)
        if any(v is None for v in cells):
            raise LabelError(f"label column '{self.label_col}' contains NULLs")
        values = {v for v in cells}
        if not values <= {0, 1, 0.0, 1.0}:
            raise LabelError(f"label column '{self.label_col}' must contain only 0/1")
        return np.array([float(v) for v in cells], dtype=np.float64)

    # --- persistence ------------------------------------------------------------

    def state_dict(self) -> dict:
        self._check_fitted()
        return {
            "label_col": self.label_col,
            "standardize": self.standardize,
            "max_categorical_levels": self.max_categorical_levels,
            "numeric_stats": {
                name: {"mean": m, "stddev": s, "impute_value": iv}
                for name, (m, s, iv) in self.numeric_stats_.items()
            },
            "vocabularies": self.vocabularies_,
            "feature_layout": [
                {
                    "column": s.column,
                    "type": s.ctype.value,
                    "kind": s.kind,
                    "start": s.start,
                    "width": s.width,
                }
                for s in self.feature_layout_
            ],
        }

    @classmethod
    def from_state_dict(cls, state: dict) -> "TableVectorizer":
        vec = cls(
            label_col=state["label_col"],
            standardize=state["standardize"],
            max_categorical_levels=state["max_categorical_levels"],
        )
        vec.numeric_stats_ = {
            name: (d["mean"], d["stddev"], d["impute_value"])
            for name, d in state["numeric_stats"].items()
        }
        spans = [
            FeatureSpan(d["column"], ColumnType(d["type"]), d["kind"], d["start"], d["width"])
            for d in state["feature_layout"]
        ]
        vocabularies = {}
        for span in spans:
            if span.kind == "categorical":
                vocab = state["vocabularies"][span.column]
                if span.ctype is ColumnType.INT64:
                    vocab = [int(v) for v in vocab]
                vocabularies[span.column] = vocab
        vec.vocabularies_ = vocabularies
        vec.feature_layout_ = spans
        vec.output_width_ = sum(s.width for s in spans)
        vec.feature_names_out_ = cls._feature_names(spans, vocabularies)
        return vec
