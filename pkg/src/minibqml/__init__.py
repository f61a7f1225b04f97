"""minibqml: an embedded SQL analytics engine with in-database ML.

Load CSVs into columnar tables, query them with a small SQL dialect, train
logistic-regression / boosted-tree / feed-forward classifiers with
CREATE MODEL, and inspect them through ML.EVALUATE, ML.PREDICT,
ML.FEATURE_IMPORTANCE, and ML.ROC_CURVE.
"""

from .artifact import ModelArtifact, load_model, save_model
from .boosted_tree import BoostedTreeClassifier
from .catalog import Catalog
from .csvio import load_csv, write_csv
from .dnn import FeedForwardClassifier
from .engine import Engine, SessionConfig, StatementResult
from .errors import MiniBqmlError
from .logistic import LogisticRegressionGD
from .metrics import (
    ConfusionCounts,
    CurvePoint,
    EvaluationReport,
    confusion,
    evaluate_scores,
    log_loss,
    pr_auc,
    pr_curve,
    roc_auc,
    roc_curve,
)
from .preprocess import TableVectorizer
from .split import SplitResult, split_random
from .sql import parse_script, parse_statement, pretty_print, tokenize
from .table import ColumnType, Table
from .training import resolve_options, train_model

__version__ = "0.1.0"

__all__ = [
    "BoostedTreeClassifier",
    "Catalog",
    "ColumnType",
    "ConfusionCounts",
    "CurvePoint",
    "Engine",
    "EvaluationReport",
    "FeedForwardClassifier",
    "LogisticRegressionGD",
    "MiniBqmlError",
    "ModelArtifact",
    "SessionConfig",
    "SplitResult",
    "StatementResult",
    "Table",
    "TableVectorizer",
    "confusion",
    "evaluate_scores",
    "load_csv",
    "load_model",
    "log_loss",
    "parse_script",
    "parse_statement",
    "pr_auc",
    "pr_curve",
    "pretty_print",
    "resolve_options",
    "roc_auc",
    "roc_curve",
    "save_model",
    "split_random",
    "tokenize",
    "train_model",
    "write_csv",
    "__version__",
]
