"""Binary classification metrics, threshold sweeps, and ROC/PR curves.

Conventions fixed here and used everywhere else in the engine:

* a row is predicted positive iff score >= threshold (default 0.5);
* ratios with a zero denominator are reported as NaN, never as 0;
* log loss clips probabilities to [1e-15, 1 - 1e-15] and uses natural log;
* ROC AUC is the trapezoidal integral of TPR over FPR with an implicit
  (0, 0) start; the emitted sweep itself starts at threshold = max score
  and ends at recall 1;
* PR AUC uses the step rule: sum of precision * recall-increment.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, LengthError

LOG_LOSS_EPS = 1e-15

SOURCE_STORED_EVAL = "stored_eval_split"
SOURCE_USER_TABLE = "user_table"
SOURCE_TRAINING_DATA = "training_data"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class CurvePoint:
    threshold: float
    precision: float
    recall: float  # true-positive rate
    false_positive_rate: float


@dataclass
class EvaluationReport:
    threshold: float
    counts: ConfusionCounts
    precision: float
    recall: float
    accuracy: float
    f1_score: float
    log_loss: float
    roc_auc: float
    pr_auc: float
    source: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["counts"] = asdict(self.counts)
        return d


def _as_arrays(labels, scores) -> tuple[np.ndarray, np.ndarray]:
    labels = np.asarray(labels, dtype=np.float64)
    scores = np.asarray(scores, dtype=np.float64)
    if labels.shape != scores.shape or labels.ndim != 1:
        raise LengthError(f"labels {labels.shape} and scores {scores.shape} must be equal-length vectors")
    if labels.size == 0:
        raise LengthError("need at least one row")
    return labels, scores


def confusion(labels, scores, threshold: float) -> ConfusionCounts:
    """Partition rows into the four confusion cells at one threshold."""
    labels, scores = _as_arrays(labels, scores)
    predicted = scores >= threshold
    actual = labels > 0.5
    return ConfusionCounts(
        tp=int(np.sum(predicted & actual)),
        fp=int(np.sum(predicted & ~actual)),
        tn=int(np.sum(~predicted & ~actual)),
        fn=int(np.sum(~predicted & actual)),
    )


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator > 0 else math.nan


def precision_of(c: ConfusionCounts) -> float:
    return _ratio(c.tp, c.tp + c.fp)


def recall_of(c: ConfusionCounts) -> float:
    return _ratio(c.tp, c.tp + c.fn)


def accuracy_of(c: ConfusionCounts) -> float:
    return _ratio(c.tp + c.tn, c.total)


def f1_of(c: ConfusionCounts) -> float:
    p = precision_of(c)
    r = recall_of(c)
    if math.isnan(p) or math.isnan(r):
        return math.nan
    return _ratio(2.0 * p * r, p + r)


def log_loss(labels, scores) -> float:
    labels, scores = _as_arrays(labels, scores)
    p = np.clip(scores, LOG_LOSS_EPS, 1.0 - LOG_LOSS_EPS)
    return float(-np.mean(labels * np.log(p) + (1.0 - labels) * np.log(1.0 - p)))


def classification_metrics(counts: ConfusionCounts, labels, scores):
    """(precision, recall, accuracy, f1, log_loss) for one threshold."""
    return (
        precision_of(counts),
        recall_of(counts),
        accuracy_of(counts),
        f1_of(counts),
        log_loss(labels, scores),
    )


# --- threshold sweeps ---------------------------------------------------------


def score_sweep(labels, scores) -> list[CurvePoint]:
    """One point per distinct score, descending; ties grouped.

    The first point sits at threshold = max score; the last classifies
    everything positive, so its recall is 1 whenever positives exist.
    """
    labels, scores = _as_arrays(labels, scores)
    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_labels = labels[order]

    n_pos = float(np.sum(labels > 0.5))
    n_neg = float(labels.size - n_pos)

    points = []
    tp = 0.0
    fp = 0.0
    i = 0
    n = labels.size
    while i < n:
        j = i
        while j < n and sorted_scores[j] == sorted_scores[i]:
            j += 1
        group_pos = float(np.sum(sorted_labels[i:j] > 0.5))
        tp += group_pos
        fp += (j - i) - group_pos
        points.append(
            CurvePoint(
                threshold=float(sorted_scores[i]),
                precision=_ratio(tp, tp + fp),
                recall=_ratio(tp, n_pos),
                false_positive_rate=_ratio(fp, n_neg),
            )
        )
        i = j
    return points


def roc_curve(labels, scores) -> list[CurvePoint]:
    labels, _ = _as_arrays(labels, scores)
    positives = int(np.sum(labels > 0.5))
    if positives == 0 or positives == labels.size:
        raise DegenerateError("ROC curve needs both classes present")
    return score_sweep(labels, scores)


def auc_from_points(points: Sequence[CurvePoint]) -> float:
    """Trapezoidal TPR-over-FPR area with the (0, 0) start point implied."""
    fpr = np.concatenate([[0.0], [p.false_positive_rate for p in points]])
    tpr = np.concatenate([[0.0], [p.recall for p in points]])
    return float(np.trapezoid(tpr, fpr))


def roc_auc(labels, scores) -> float:
    return auc_from_points(roc_curve(labels, scores))


def pr_curve(labels, scores) -> list[CurvePoint]:
    labels, _ = _as_arrays(labels, scores)
    if int(np.sum(labels > 0.5)) == 0:
        raise DegenerateError("PR curve needs at least one positive")
    return score_sweep(labels, scores)


def pr_auc_from_points(points: Sequence[CurvePoint]) -> float:
    area = 0.0
    prev_recall = 0.0
    for p in points:
        area += (p.recall - prev_recall) * p.precision
        prev_recall = p.recall
    return area


def pr_auc(labels, scores) -> float:
    return pr_auc_from_points(pr_curve(labels, scores))


# --- reports ------------------------------------------------------------------


def evaluate_scores(labels, scores, threshold: float = 0.5,
                    source: str = SOURCE_USER_TABLE) -> EvaluationReport:
    """Full evaluation report for one (labels, scores) pair."""
    labels, scores = _as_arrays(labels, scores)
    counts = confusion(labels, scores, threshold)
    p, r, a, f1, ll = classification_metrics(counts, labels, scores)
    return EvaluationReport(
        threshold=threshold,
        counts=counts,
        precision=p,
        recall=r,
        accuracy=a,
        f1_score=f1,
        log_loss=ll,
        roc_auc=roc_auc(labels, scores),
        pr_auc=pr_auc(labels, scores),
        source=source,
    )
