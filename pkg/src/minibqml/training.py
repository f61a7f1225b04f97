"""Option defaulting and the train-a-model pipeline behind CREATE MODEL."""

from __future__ import annotations

from .artifact import ModelArtifact
from .boosted_tree import BoostedTreeClassifier
from .dnn import FeedForwardClassifier
from .errors import EmptyInputError, LabelError
from .logistic import LogisticRegressionGD
from .preprocess import TableVectorizer
from .split import split_random
from .table import Table

DEFAULT_SEED = 42

_COMMON_DEFAULTS = {
    "data_split_method": "RANDOM",
    "data_split_eval_fraction": 0.2,
    "max_iterations": 50,
    "min_rel_progress": 0.01,
    "l1_reg": 0.0,
    "l2_reg": 1.0,
    "max_tree_depth": 6,
    "hidden_units": (64, 32),
    "batch_size": 256,
}


def resolve_options(options: dict, default_seed: int = DEFAULT_SEED) -> dict:
    """Apply trainer defaults; the result is what the artifact records."""
    out = dict(_COMMON_DEFAULTS)
    out["learn_rate"] = 0.3 if options.get("model_type") == "boosted_tree_classifier" else 0.1
    out["seed"] = default_seed
    out.update(options)
    return out


def make_classifier(options: dict):
    model_type = options["model_type"]
    if model_type == "logistic_reg":
        return LogisticRegressionGD(
            max_iterations=options["max_iterations"],
            learn_rate=options["learn_rate"],
            min_rel_progress=options["min_rel_progress"],
            l1_reg=options["l1_reg"],
            l2_reg=options["l2_reg"],
        )
    if model_type == "boosted_tree_classifier":
        return BoostedTreeClassifier(
            max_iterations=options["max_iterations"],
            learn_rate=options["learn_rate"],
            min_rel_progress=options["min_rel_progress"],
            l1_reg=options["l1_reg"],
            l2_reg=options["l2_reg"],
            max_tree_depth=options["max_tree_depth"],
        )
    return FeedForwardClassifier(
        hidden_units=tuple(options["hidden_units"]),
        max_iterations=options["max_iterations"],
        learn_rate=options["learn_rate"],
        min_rel_progress=options["min_rel_progress"],
        l2_reg=options["l2_reg"],
        batch_size=options["batch_size"],
        seed=options["seed"],
    )


def train_model(name: str, rows: Table, options: dict,
                default_seed: int = DEFAULT_SEED) -> ModelArtifact:
    """Split, preprocess, and fit; returns the assembled artifact."""
    options = resolve_options(options, default_seed)
    label_col = options["input_label_cols"][0]
    if not rows.has_column(label_col):
        raise LabelError(f"label column '{label_col}' not found in the training input")

    labeled_ids = [i for i, v in enumerate(rows.column(label_col)) if v is not None]
    if not labeled_ids:
        raise EmptyInputError("no rows with a non-NULL label")
    labeled = rows.take(labeled_ids)

    if options["data_split_method"] == "NO_SPLIT":
        train_rows, eval_rows = labeled, labeled
    else:
        result = split_random(labeled, options["data_split_eval_fraction"], options["seed"])
        train_rows, eval_rows = result.train_rows, result.eval_rows

    vectorizer = TableVectorizer.for_model_type(label_col, options["model_type"]).fit(train_rows)
    X = vectorizer.transform(train_rows)
    y = vectorizer.label_vector(train_rows)
    model = make_classifier(options).fit(X, y)

    return ModelArtifact(
        name=name,
        model_type=options["model_type"],
        options=options,
        preprocessor=vectorizer,
        model=model,
        training_log=list(model.training_log_),
        eval_rows=eval_rows.rename(""),
        seed_used=options["seed"],
    )
