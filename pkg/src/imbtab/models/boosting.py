"""Gradient-boosted trees: exact greedy second-order splits on log-loss.

Per round, with p = sigmoid(raw score): g = p - y, h = p(1-p). Leaves take
-G/(H + lambda); a split is accepted only with strictly positive gain
0.5 * [G_L^2/(H_L+l) + G_R^2/(H_R+l) - (G_L+G_R)^2/(H_L+H_R+l)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, NonFiniteScore
from .logistic import sigmoid
from .tree import TreeNode, gini_impurity

_EPS = 1e-6


def logit(p):
    return math.log(p / (1.0 - p))


@dataclass
class BoostedModel:
    base_score: float  # initial raw log-odds
    trees: list
    learning_rate: float
    l2_lambda: float
    rounds: int


def _leaf_value(G, H, lam):
    return -G / (H + lam)


def _best_gain_split(X, g, h, lam, min_samples_leaf):
    """(feature, threshold, gain) maximizing the second-order gain, or None."""
    n = len(g)
    G, H = g.sum(), h.sum()
    parent = G * G / (H + lam)
    best = None  # (-gain, feature, threshold) so min-compare gives lexicographic ties
    for f in range(X.shape[1]):
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        sv = col[order]
        boundaries = np.flatnonzero(sv[:-1] != sv[1:])
        if len(boundaries) == 0:
            continue
        gc = np.cumsum(g[order])
        hc = np.cumsum(h[order])
        GL = gc[boundaries]
        HL = hc[boundaries]
        GR = G - GL
        HR = H - HL
        n_left = boundaries + 1
        valid = (n_left >= min_samples_leaf) & ((n - n_left) >= min_samples_leaf)
        if not valid.any():
            continue
        gain = 0.5 * (GL**2 / (HL + lam) + GR**2 / (HR + lam) - parent)
        gain = np.where(valid, gain, -np.inf)
        j = int(np.argmax(gain))  # first max = lowest threshold
        thresholds = (sv[boundaries] + sv[boundaries + 1]) / 2.0
        cand = (-float(gain[j]), int(f), float(thresholds[j]))
        if best is None or cand[0] < best[0]:
            best = cand
    if best is None or -best[0] <= 0.0:
        return None
    return best[1], best[2], -best[0]


def _grow_gain_tree(X, y01, g, h, depth, cfg):
    node = TreeNode(
        score=float(_leaf_value(g.sum(), h.sum(), cfg.l2)),
        gini=gini_impurity(y01),
        n_samples=len(g),
    )
    if cfg.max_depth is not None and depth >= cfg.max_depth:
        return node
    found = _best_gain_split(X, g, h, cfg.l2, cfg.min_samples_leaf)
    if found is None:
        return node
    feature, threshold, _ = found
    mask = X[:, feature] <= threshold
    node.feature = feature
    node.threshold = threshold
    node.left = _grow_gain_tree(X[mask], y01[mask], g[mask], h[mask], depth + 1, cfg)
    node.right = _grow_gain_tree(X[~mask], y01[~mask], g[~mask], h[~mask], depth + 1, cfg)
    return node


def _raw_tree_predict(node, X):
    out = np.empty(len(X))
    for i, row in enumerate(X):
        cur = node
        while not cur.is_leaf:
            cur = cur.left if row[cur.feature] <= cur.threshold else cur.right
        out[i] = cur.score
    return out


def fit_gbt(X, y, cfg):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(y) == 0:
        raise EmptyInput("cannot fit boosted trees on zero rows")
    base = logit(min(max(float(y.mean()), _EPS), 1.0 - _EPS))
    raw = np.full(len(y), base)
    trees = []
    for _ in range(cfg.rounds):
        p = sigmoid(raw)
        g = p - y
        h = p * (1.0 - p)
        tree = _grow_gain_tree(X, y, g, h, 0, cfg)
        contrib = _raw_tree_predict(tree, X)
        raw = raw + cfg.learning_rate * contrib
        if not np.all(np.isfinite(raw)):
            raise NonFiniteScore("boosted raw scores became non-finite")
        trees.append(tree)
    return BoostedModel(
        base_score=base,
        trees=trees,
        learning_rate=cfg.learning_rate,
        l2_lambda=cfg.l2,
        rounds=cfg.rounds,
    )


def gbt_raw_score(model, X):
    X = np.asarray(X, dtype=np.float64)
    raw = np.full(len(X), model.base_score)
    for tree in model.trees:
        raw = raw + model.learning_rate * _raw_tree_predict(tree, X)
    return raw


def gbt_predict_proba(model, X):
    return sigmoid(gbt_raw_score(model, X))
