"""Statement execution: the glue between the SQL frontend, the catalog,
the trainers, and the evaluation suite.

Statements are executed serially under a lock (the catalog is a
single-writer resource). Trained models are registered in the catalog and
persisted to the session's model directory; tables live only in memory and
are re-ingested from CSV.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .artifact import MODEL_FILE_SUFFIX, ModelArtifact, load_model, save_model
from .boosted_tree import BoostedTreeClassifier
from .catalog import Catalog
from .csvio import load_csv
from .errors import (
    CatalogError,
    EmptyInputError,
    MiniBqmlError,
    ModelTypeError,
    SchemaError,
)
from .executor import execute_select
from .metrics import (
    SOURCE_STORED_EVAL,
    SOURCE_TRAINING_DATA,
    SOURCE_USER_TABLE,
    EvaluationReport,
    evaluate_scores,
    score_sweep,
)
from .sql.ast_nodes import (
    CreateModelStmt,
    CreateTableFromCsvStmt,
    MlEvaluateStmt,
    MlFeatureImportanceStmt,
    MlPredictStmt,
    MlRocCurveStmt,
    SelectStmt,
    Statement,
)
from .sql.parser import parse_statement
from .table import ColumnType, Table
from .training import DEFAULT_SEED, train_model

REPORT_COLUMNS = ("precision", "recall", "accuracy", "f1_score", "log_loss", "roc_auc")
CURVE_COLUMNS = ("threshold", "recall", "false_positive_rate", "precision")


@dataclass
class SessionConfig:
    seed: int = DEFAULT_SEED
    output_format: str = "table"  # table | csv | json
    model_dir: Path = Path("models")

    def __post_init__(self):
        self.model_dir = Path(self.model_dir)


@dataclass
class StatementResult:
    table: Table | None = None
    message: str | None = None
    report: EvaluationReport | None = None
    warnings: list[str] = field(default_factory=list)


class Engine:
    def __init__(self, config: SessionConfig | None = None):
        self.config = config or SessionConfig()
        self.catalog = Catalog()
        self.startup_warnings: list[str] = []
        self._lock = threading.Lock()
        self._restore_models()

    def _restore_models(self) -> None:
        model_dir = self.config.model_dir
        if not model_dir.is_dir():
            return
        for path in sorted(model_dir.glob(f"*{MODEL_FILE_SUFFIX}")):
            try:
                self.catalog.register_model(load_model(path), replace=True)
            except MiniBqmlError as exc:
                self.startup_warnings.append(f"skipping {path}: {exc}")

    # --- entry points ---------------------------------------------------------

    def execute_sql(self, text: str) -> StatementResult:
        return self.execute(parse_statement(text))

    def execute(self, stmt: Statement) -> StatementResult:
        with self._lock:
            if isinstance(stmt, SelectStmt):
                return StatementResult(table=execute_select(stmt, self.catalog))
            if isinstance(stmt, CreateTableFromCsvStmt):
                return self._create_table(stmt)
            if isinstance(stmt, CreateModelStmt):
                return self._create_model(stmt)
            if isinstance(stmt, MlEvaluateStmt):
                return self._ml_evaluate(stmt)
            if isinstance(stmt, MlPredictStmt):
                return self._ml_predict(stmt)
            if isinstance(stmt, MlFeatureImportanceStmt):
                return self._ml_feature_importance(stmt)
            if isinstance(stmt, MlRocCurveStmt):
                return self._ml_roc_curve(stmt)
            raise TypeError(f"unknown statement {stmt!r}")

    def ingest_csv(self, path: str | Path, table_name: str, replace: bool = False) -> Table:
        table = load_csv(path, table_name)
        self.catalog.register_table(table, replace=replace)
        return table

    # --- statement handlers -----------------------------------------------------

    def _create_table(self, stmt: CreateTableFromCsvStmt) -> StatementResult:
        table = self.ingest_csv(stmt.path, stmt.name, replace=stmt.replace)
        return StatementResult(
            message=f"Table {stmt.name} loaded: {table.row_count} rows, {len(table.columns)} columns"
        )

    def _create_model(self, stmt: CreateModelStmt) -> StatementResult:
        if self.catalog.has_model(stmt.name) and not stmt.replace:
            # surface the duplicate before spending minutes on training
            raise CatalogError(f"model '{stmt.name}' already exists (use OR REPLACE)")
        rows = execute_select(stmt.query, self.catalog)
        artifact = train_model(stmt.name, rows, stmt.options, default_seed=self.config.seed)
        self.catalog.register_model(artifact, replace=stmt.replace)
        path = self._persist(artifact)
        final_loss = artifact.training_log[-1][1]
        return StatementResult(
            message=(
                f"Model {stmt.name} trained: {artifact.model_type}, "
                f"{artifact.training_log[-1][0]} iterations, "
                f"final training loss {final_loss:.6f}, saved to {path}"
            )
        )

    def _persist(self, artifact: ModelArtifact) -> Path:
        self.config.model_dir.mkdir(parents=True, exist_ok=True)
        path = self.config.model_dir / f"{artifact.name}{MODEL_FILE_SUFFIX}"
        save_model(artifact, path)
        return path

    # --- evaluation sources -------------------------------------------------------

    def _evaluation_rows(self, artifact: ModelArtifact,
                         input_query: SelectStmt | None) -> tuple[Table, str, list[str]]:
        warnings: list[str] = []
        if input_query is not None:
            return execute_select(input_query, self.catalog), SOURCE_USER_TABLE, warnings
        source = SOURCE_STORED_EVAL
        if artifact.options.get("data_split_method") == "NO_SPLIT":
            source = SOURCE_TRAINING_DATA
            warnings.append(
                f"model {artifact.name} was trained with NO_SPLIT; metrics are on training data"
            )
        return artifact.eval_rows, source, warnings

    def _labeled_scores(self, artifact: ModelArtifact, rows: Table) -> tuple[np.ndarray, np.ndarray]:
        label_col = artifact.label_col
        if not rows.has_column(label_col):
            raise SchemaError(f"evaluation input lacks the label column '{label_col}'")
        keep = [i for i, v in enumerate(rows.column(label_col)) if v is not None]
        if not keep:
            raise EmptyInputError("no rows with a non-NULL label to evaluate")
        rows = rows.take(keep)
        scores = artifact.predict_proba(rows)
        labels = artifact.preprocessor.label_vector(rows)
        return labels, scores

    def _ml_evaluate(self, stmt: MlEvaluateStmt) -> StatementResult:
        artifact = self.catalog.model(stmt.model)
        rows, source, warnings = self._evaluation_rows(artifact, stmt.input)
        labels, scores = self._labeled_scores(artifact, rows)
        report = evaluate_scores(labels, scores, threshold=0.5, source=source)
        values = [
            report.precision, report.recall, report.accuracy,
            report.f1_score, report.log_loss, report.roc_auc,
        ]
        table = Table(
            "",
            [(name, ColumnType.FLOAT64) for name in REPORT_COLUMNS],
            [[float(v)] for v in values],
        )
        return StatementResult(table=table, report=report, warnings=warnings)

    def _ml_predict(self, stmt: MlPredictStmt) -> StatementResult:
        artifact = self.catalog.model(stmt.model)
        rows = execute_select(stmt.input, self.catalog)
        scores = artifact.predict_proba(rows)
        predicted = (scores >= stmt.threshold).astype(int)

        label = artifact.label_col
        columns = list(rows.columns) + [
            (f"predicted_{label}", ColumnType.INT64),
            (f"predicted_{label}_prob", ColumnType.FLOAT64),
        ]
        cells = [list(col) for col in rows.cells]
        cells.append([int(v) for v in predicted])
        cells.append([float(v) for v in scores])
        return StatementResult(table=Table("", columns, cells))

    def _ml_feature_importance(self, stmt: MlFeatureImportanceStmt) -> StatementResult:
        artifact = self.catalog.model(stmt.model)
        if not isinstance(artifact.model, BoostedTreeClassifier):
            raise ModelTypeError(
                f"ML.FEATURE_IMPORTANCE needs a boosted tree model, "
                f"'{stmt.model}' is {artifact.model_type}"
            )
        vectorizer = artifact.preprocessor
        gains = artifact.model.feature_gain_totals(vectorizer.output_width_)
        rows = [
            (span.column, float(np.sum(gains[span.start : span.start + span.width])))
            for span in vectorizer.feature_layout_
        ]
        rows.sort(key=lambda item: -item[1])  # stable: ties keep layout order
        table = Table(
            "",
            [("feature", ColumnType.STRING), ("importance_gain", ColumnType.FLOAT64)],
            [[r[0] for r in rows], [r[1] for r in rows]],
        )
        return StatementResult(table=table)

    def _ml_roc_curve(self, stmt: MlRocCurveStmt) -> StatementResult:
        artifact = self.catalog.model(stmt.model)
        rows, _, warnings = self._evaluation_rows(artifact, None)
        labels, scores = self._labeled_scores(artifact, rows)
        points = score_sweep(labels, scores)
        table = Table(
            "",
            [(name, ColumnType.FLOAT64) for name in CURVE_COLUMNS],
            [
                [p.threshold for p in points],
                [p.recall for p in points],
                [p.false_positive_rate for p in points],
                [p.precision for p in points],
            ],
        )
        return StatementResult(table=table, warnings=warnings)


