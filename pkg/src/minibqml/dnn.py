"""Feed-forward binary classifier trained with mini-batch Adam.

Architecture: input -> hidden_units... -> 1, rectified-linear hidden
activations, logistic sigmoid output. The objective is mean logistic loss
plus ``l2_reg * ||W||^2 / (2n)`` over the weight matrices (biases are not
penalized, n is the training-set size). One iteration is one epoch over a
seeded shuffle of the rows; the same relative-progress rule as the other
trainers stops training on the epoch-level training objective.

An empty ``hidden_units`` list degenerates to a single sigmoid unit, i.e.
logistic regression trained by Adam.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.special import expit
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import ConvergenceWarning, NotFittedError
from sklearn.utils.validation import check_array, check_X_y

from .errors import DataError
from .logistic import MARGIN_CLIP, logistic_data_loss

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def init_layers(layer_dims: list[int], rng: np.random.Generator):
    """Symmetric uniform fan-in init: W ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in))."""
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def forward_margins(weights, biases, X: np.ndarray) -> np.ndarray:
    a = X
    for W, b in zip(weights[:-1], biases[:-1]):
        a = np.maximum(a @ W + b, 0.0)
    return (a @ weights[-1] + biases[-1]).ravel()


def network_loss_and_grads(weights, biases, X, y, l2_reg, n_total):
    """Objective on (X, y) plus gradients for every weight matrix and bias.

    The L2 term and its gradient are scaled by the full training-set size
    ``n_total`` so mini-batch gradients stay unbiased estimates of the
    full-dataset objective gradient.
    """
    n = X.shape[0]
    activations = [X]
    pre_acts = []
    a = X
    for W, b in zip(weights[:-1], biases[:-1]):
        z = a @ W + b
        pre_acts.append(z)
        a = np.maximum(z, 0.0)
        activations.append(a)
    margins = (a @ weights[-1] + biases[-1]).ravel()

    loss = logistic_data_loss(margins, y)
    penalty = l2_reg * sum(float(np.sum(W * W)) for W in weights) / (2.0 * n_total)

    delta = ((expit(margins) - y) / n).reshape(-1, 1)
    grad_w = [None] * len(weights)
    grad_b = [None] * len(biases)
    for layer in range(len(weights) - 1, -1, -1):
        grad_w[layer] = activations[layer].T @ delta + l2_reg * weights[layer] / n_total
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ weights[layer].T) * (pre_acts[layer - 1] > 0.0)
    return loss + penalty, grad_w, grad_b


class FeedForwardClassifier(BaseEstimator, ClassifierMixin):
    """ReLU network with sigmoid output, trained by seeded mini-batch Adam.

    Fitted attributes: ``coefs_`` and ``intercepts_`` (one entry per
    layer), ``training_log_`` as (epoch, objective) pairs starting at
    epoch 0, ``n_iter_``, and ``converged_``.
    """

    def __init__(self, hidden_units: tuple[int, ...] = (64, 32), max_iterations: int = 50,
                 learn_rate: float = 0.1, min_rel_progress: float = 0.01, l2_reg: float = 1.0,
                 batch_size: int = 256, seed: int = 42):
        self.hidden_units = hidden_units
        self.max_iterations = max_iterations
        self.learn_rate = learn_rate
        self.min_rel_progress = min_rel_progress
        self.l2_reg = l2_reg
        self.batch_size = batch_size
        self.seed = seed

    def fit(self, X, y) -> "FeedForwardClassifier":
        X, y = check_X_y(X, y, dtype=np.float64)
        classes = np.unique(y)
        if not np.array_equal(classes, [0.0, 1.0]):
            raise DataError(f"labels must contain both classes 0 and 1, got {classes.tolist()}")

        n = X.shape[0]
        rng = np.random.default_rng(self.seed)
        dims = [X.shape[1], *self.hidden_units, 1]
        weights, biases = init_layers(dims, rng)

        # Adam state
        m_w = [np.zeros_like(W) for W in weights]
        v_w = [np.zeros_like(W) for W in weights]
        m_b = [np.zeros_like(b) for b in biases]
        v_b = [np.zeros_like(b) for b in biases]
        step = 0

        def full_objective() -> float:
            margins = forward_margins(weights, biases, X)
            penalty = self.l2_reg * sum(float(np.sum(W * W)) for W in weights) / (2.0 * n)
            return logistic_data_loss(margins, y) + penalty

        log = [(0, full_objective())]
        converged = False
        epoch = 0
        for epoch in range(1, self.max_iterations + 1):
            order = rng.permutation(n)
            for start in range(0, n, self.batch_size):
                batch = order[start : start + self.batch_size]
                _, grad_w, grad_b = network_loss_and_grads(
                    weights, biases, X[batch], y[batch], self.l2_reg, n
                )
                step += 1
                bias_fix1 = 1.0 - ADAM_BETA1**step
                bias_fix2 = 1.0 - ADAM_BETA2**step
                for i in range(len(weights)):
                    m_w[i] = ADAM_BETA1 * m_w[i] + (1.0 - ADAM_BETA1) * grad_w[i]
                    v_w[i] = ADAM_BETA2 * v_w[i] + (1.0 - ADAM_BETA2) * grad_w[i] ** 2
                    weights[i] -= self.learn_rate * (m_w[i] / bias_fix1) / (
                        np.sqrt(v_w[i] / bias_fix2) + ADAM_EPS
                    )
                    m_b[i] = ADAM_BETA1 * m_b[i] + (1.0 - ADAM_BETA1) * grad_b[i]
                    v_b[i] = ADAM_BETA2 * v_b[i] + (1.0 - ADAM_BETA2) * grad_b[i] ** 2
                    biases[i] -= self.learn_rate * (m_b[i] / bias_fix1) / (
                        np.sqrt(v_b[i] / bias_fix2) + ADAM_EPS
                    )

            current = full_objective()
            previous = log[-1][1]
            log.append((epoch, current))
            if previous == 0.0 or (previous - current) / previous < self.min_rel_progress:
                converged = True
                break

        if not converged:
            warnings.warn(
                f"network did not reach min_rel_progress={self.min_rel_progress} "
                f"within {self.max_iterations} epochs",
                ConvergenceWarning,
            )

        self.classes_ = np.array([0, 1])
        self.coefs_ = weights
        self.intercepts_ = biases
        self.training_log_ = log
        self.n_iter_ = epoch
        self.converged_ = converged
        return self

    def decision_function(self, X) -> np.ndarray:
        if not hasattr(self, "coefs_"):
            raise NotFittedError("FeedForwardClassifier is not fitted")
        X = check_array(X, dtype=np.float64)
        return forward_margins(self.coefs_, self.intercepts_, X)

    def predict_proba(self, X) -> np.ndarray:
        margins = np.clip(self.decision_function(X), -MARGIN_CLIP, MARGIN_CLIP)
        p1 = expit(margins)
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X) -> np.ndarray:
        return (self.predict_proba(X)[:, 1] >= 0.5).astype(np.int64)
