"""Trained-model artifacts and their on-disk JSON format.

A model file (extension ``.mbqml.json``, schema_version 1) holds the fully
defaulted options, the fitted preprocessor state, the learned parameters
(tree structures as nested nodes, weight matrices as row-major arrays),
the training log, and the retained evaluation rows. All numbers are
serialized with full round-trip precision, so a saved-then-loaded model
produces bit-identical predictions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boosted_tree import BoostedTreeClassifier, TreeNode
from .dnn import FeedForwardClassifier
from .errors import FormatError, IoError
from .logistic import LogisticRegressionGD
from .preprocess import TableVectorizer
from .table import ColumnType, Table

SCHEMA_VERSION = 1
MODEL_FILE_SUFFIX = ".mbqml.json"


@dataclass
class ModelArtifact:
    name: str
    model_type: str
    options: dict  # fully defaulted
    preprocessor: TableVectorizer
    model: object  # fitted estimator, one of the three classifiers
    training_log: list[tuple[int, float]]
    eval_rows: Table
    seed_used: int
    schema_version: int = SCHEMA_VERSION

    def predict_proba(self, rows: Table) -> np.ndarray:
        """Probability of class 1 for each row, via the stored pipeline."""
        X = self.preprocessor.transform(rows)
        return self.model.predict_proba(X)[:, 1]

    @property
    def label_col(self) -> str:
        return self.options["input_label_cols"][0]


# --- parameter (de)serialization ------------------------------------------------


def _params_to_dict(model) -> dict:
    if isinstance(model, LogisticRegressionGD):
        return {
            "weights": model.coef_[0].tolist(),
            "intercept": float(model.intercept_[0]),
        }
    if isinstance(model, BoostedTreeClassifier):
        return {
            "base_score": model.base_score_,
            "shrinkage": model.shrinkage_,
            "trees": [root.to_dict() for root in model.trees_],
        }
    if isinstance(model, FeedForwardClassifier):
        return {
            "layers": [
                {"weights": W.tolist(), "bias": b.tolist()}
                for W, b in zip(model.coefs_, model.intercepts_)
            ]
        }
    raise FormatError(f"unsupported model object {type(model).__name__}")


def _model_from_params(model_type: str, options: dict, params: dict,
                       training_log: list[tuple[int, float]]):
    if model_type == "logistic_reg":
        model = LogisticRegressionGD(
            max_iterations=options["max_iterations"],
            learn_rate=options["learn_rate"],
            min_rel_progress=options["min_rel_progress"],
            l1_reg=options["l1_reg"],
            l2_reg=options["l2_reg"],
        )
        model.classes_ = np.array([0, 1])
        model.coef_ = np.array([params["weights"]], dtype=np.float64)
        model.intercept_ = np.array([params["intercept"]], dtype=np.float64)
    elif model_type == "boosted_tree_classifier":
        model = BoostedTreeClassifier(
            max_iterations=options["max_iterations"],
            learn_rate=options["learn_rate"],
            min_rel_progress=options["min_rel_progress"],
            l1_reg=options["l1_reg"],
            l2_reg=options["l2_reg"],
            max_tree_depth=options["max_tree_depth"],
        )
        model.classes_ = np.array([0, 1])
        model.base_score_ = params["base_score"]
        model.shrinkage_ = params["shrinkage"]
        model.trees_ = [TreeNode.from_dict(d) for d in params["trees"]]
    elif model_type == "dnn_classifier":
        model = FeedForwardClassifier(
            hidden_units=tuple(options["hidden_units"]),
            max_iterations=options["max_iterations"],
            learn_rate=options["learn_rate"],
            min_rel_progress=options["min_rel_progress"],
            l2_reg=options["l2_reg"],
            batch_size=options["batch_size"],
            seed=options["seed"],
        )
        model.classes_ = np.array([0, 1])
        model.coefs_ = [np.array(layer["weights"], dtype=np.float64) for layer in params["layers"]]
        model.intercepts_ = [np.array(layer["bias"], dtype=np.float64) for layer in params["layers"]]
    else:
        raise FormatError(f"unknown model_type {model_type!r}")
    model.training_log_ = list(training_log)
    model.n_iter_ = training_log[-1][0] if training_log else 0
    return model


# --- table (de)serialization -----------------------------------------------------


def _table_to_dict(table: Table) -> dict:
    return {
        "name": table.name,
        "columns": [[n, t.value] for n, t in table.columns],
        "cells": table.cells,
    }


def _table_from_dict(d: dict) -> Table:
    columns = [(n, ColumnType(t)) for n, t in d["columns"]]
    cells = []
    for (name, ctype), col in zip(columns, d["cells"]):
        if ctype is ColumnType.INT64:
            col = [int(v) if v is not None else None for v in col]
        elif ctype is ColumnType.FLOAT64:
            col = [float(v) if v is not None else None for v in col]
        cells.append(col)
    return Table(d["name"], columns, cells)


# --- save / load ------------------------------------------------------------------


def _options_to_json(options: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in options.items()}


def _options_from_json(options: dict) -> dict:
    out = dict(options)
    if "input_label_cols" in out:
        out["input_label_cols"] = tuple(out["input_label_cols"])
    if "hidden_units" in out:
        out["hidden_units"] = tuple(int(u) for u in out["hidden_units"])
    return out


def save_model(artifact: ModelArtifact, path: str | Path) -> None:
    document = {
        "schema_version": artifact.schema_version,
        "name": artifact.name,
        "model_type": artifact.model_type,
        "options": _options_to_json(artifact.options),
        "seed_used": artifact.seed_used,
        "preprocessor": artifact.preprocessor.state_dict(),
        "params": _params_to_dict(artifact.model),
        "training_log": [[i, loss] for i, loss in artifact.training_log],
        "eval_rows": _table_to_dict(artifact.eval_rows),
    }
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(document, fh)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_model(path: str | Path) -> ModelArtifact:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupted model file {path}: {exc}") from exc

    if not isinstance(document, dict):
        raise FormatError(f"corrupted model file {path}: not a JSON object")
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    try:
        options = _options_from_json(document["options"])
        training_log = [(int(i), float(loss)) for i, loss in document["training_log"]]
        artifact = ModelArtifact(
            name=document["name"],
            model_type=document["model_type"],
            options=options,
            preprocessor=TableVectorizer.from_state_dict(document["preprocessor"]),
            model=_model_from_params(document["model_type"], options, document["params"], training_log),
            training_log=training_log,
            eval_rows=_table_from_dict(document["eval_rows"]),
            seed_used=int(document["seed_used"]),
            schema_version=version,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"corrupted model file {path}: {exc}") from exc
    return artifact
