"""Binary logistic regression trained by full-batch proximal gradient descent.

Objective over n rows and weight vector w (intercept b unregularized):

    J(w, b) = mean logistic loss + l2_reg * ||w||^2 / (2n) + l1_reg * ||w||_1

Each iteration takes one gradient step of size ``learn_rate`` on the smooth
part, then applies the L1 soft-threshold proximal operator with threshold
``learn_rate * l1_reg``. Training stops when the relative objective
improvement between consecutive iterations falls below
``min_rel_progress``, or after ``max_iterations`` steps.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.special import expit
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import ConvergenceWarning, NotFittedError
from sklearn.utils.validation import check_array, check_X_y

from .errors import DataError

MARGIN_CLIP = 30.0


def logistic_data_loss(margins: np.ndarray, y: np.ndarray) -> float:
    """Mean logistic loss, computed stably via log(1 + exp(-|m|))."""
    # log(1 + e^{-m}) for y=1 and log(1 + e^{m}) for y=0
    signed = np.where(y > 0.5, -margins, margins)
    return float(np.mean(np.logaddexp(0.0, signed)))


def logistic_objective_grad(
    w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, l2_reg: float
) -> tuple[float, np.ndarray, float]:
    """Smooth part of the objective (data loss + L2 term) and its gradient.

    Kept as a standalone function so finite-difference checks can probe it
    directly.
    """
    n = X.shape[0]
    margins = X @ w + b
    loss = logistic_data_loss(margins, y) + l2_reg * float(w @ w) / (2.0 * n)
    residual = expit(margins) - y
    grad_w = X.T @ residual / n + l2_reg * w / n
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def soft_threshold(w: np.ndarray, threshold: float) -> np.ndarray:
    return np.sign(w) * np.maximum(np.abs(w) - threshold, 0.0)


class LogisticRegressionGD(BaseEstimator, ClassifierMixin):
    """Logistic regression with L1/L2 regularization and early stopping.

    Fitted attributes: ``coef_`` (1, n_features), ``intercept_`` (1,),
    ``training_log_`` as (iteration, objective) pairs starting at iteration
    0, ``n_iter_``, and ``converged_``.
    """

    def __init__(self, max_iterations: int = 50, learn_rate: float = 0.1,
                 min_rel_progress: float = 0.01, l1_reg: float = 0.0, l2_reg: float = 1.0):
        self.max_iterations = max_iterations
        self.learn_rate = learn_rate
        self.min_rel_progress = min_rel_progress
        self.l1_reg = l1_reg
        self.l2_reg = l2_reg

    def fit(self, X, y) -> "LogisticRegressionGD":
        X, y = check_X_y(X, y, dtype=np.float64)
        classes = np.unique(y)
        if not np.array_equal(classes, [0.0, 1.0]):
            raise DataError(f"labels must contain both classes 0 and 1, got {classes.tolist()}")
        n = X.shape[0]

        w = np.zeros(X.shape[1])
        b = 0.0
        prox = self.learn_rate * self.l1_reg

        def objective(w_, b_) -> float:
            loss, _, _ = logistic_objective_grad(w_, b_, X, y, self.l2_reg)
            return loss + self.l1_reg * float(np.sum(np.abs(w_)))

        log = [(0, objective(w, b))]
        converged = False
        iteration = 0
        for iteration in range(1, self.max_iterations + 1):
            _, grad_w, grad_b = logistic_objective_grad(w, b, X, y, self.l2_reg)
            w = w - self.learn_rate * grad_w
            b = b - self.learn_rate * grad_b
            if prox > 0.0:
                w = soft_threshold(w, prox)
            current = objective(w, b)
            previous = log[-1][1]
            log.append((iteration, current))
            if previous == 0.0 or (previous - current) / previous < self.min_rel_progress:
                converged = True
                break

        if not converged:
            warnings.warn(
                f"logistic regression did not reach min_rel_progress={self.min_rel_progress} "
                f"within {self.max_iterations} iterations",
                ConvergenceWarning,
            )

        self.classes_ = np.array([0, 1])
        self.coef_ = w.reshape(1, -1)
        self.intercept_ = np.array([b])
        self.training_log_ = log
        self.n_iter_ = iteration
        self.converged_ = converged
        return self

    def decision_function(self, X) -> np.ndarray:
        if not hasattr(self, "coef_"):
            raise NotFittedError("LogisticRegressionGD is not fitted")
        X = check_array(X, dtype=np.float64)
        return X @ self.coef_[0] + self.intercept_[0]

    def predict_proba(self, X) -> np.ndarray:
        margins = np.clip(self.decision_function(X), -MARGIN_CLIP, MARGIN_CLIP)
        p1 = expit(margins)
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X) -> np.ndarray:
        return (self.predict_proba(X)[:, 1] >= 0.5).astype(np.int64)
