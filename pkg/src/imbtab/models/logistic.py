"""L2-regularized logistic regression fitted by full-batch gradient descent."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, NonFiniteLoss

_CLIP = 1e-12


def sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(z, dtype=np.float64)))


@dataclass
class LinearModel:
    weights: np.ndarray
    bias: float
    final_loss: float
    iterations: int


def logistic_loss(X, y, w, b, l2):
    """Mean log-loss plus (l2/2)*||w||^2; the bias is unregularized."""
    p = np.clip(sigmoid(X @ w + b), _CLIP, 1.0 - _CLIP)
    nll = -np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))
    return float(nll + 0.5 * l2 * np.dot(w, w))


def logistic_gradient(X, y, w, b, l2):
    """(dL/dw, dL/db) of logistic_loss."""
    p = sigmoid(X @ w + b)
    resid = p - y
    gw = X.T @ resid / len(y) + l2 * w
    gb = float(np.mean(resid))
    return gw, gb


def fit_logistic(X, y, cfg):
    """Zero-initialized gradient descent; stops when the gradient inf-norm
    drops below cfg.tolerance or cfg.iterations is exhausted."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(y) == 0:
        raise EmptyInput("cannot fit logistic regression on zero rows")
    w = np.zeros(X.shape[1])
    b = 0.0
    loss = logistic_loss(X, y, w, b, cfg.l2)
    it = 0
    for it in range(1, cfg.iterations + 1):
        gw, gb = logistic_gradient(X, y, w, b, cfg.l2)
        if max(np.max(np.abs(gw), initial=0.0), abs(gb)) < cfg.tolerance:
            it -= 1
            break
        w -= cfg.learning_rate * gw
        b -= cfg.learning_rate * gb
        loss = logistic_loss(X, y, w, b, cfg.l2)
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"loss diverged at iteration {it}; lower the learning rate")
    return LinearModel(weights=w, bias=b, final_loss=loss, iterations=it)


def linear_predict_proba(model, X):
    return sigmoid(np.asarray(X, dtype=np.float64) @ model.weights + model.bias)
