"""CART classification tree with exact greedy Gini splits.

Candidate thresholds are midpoints between consecutive distinct sorted values
of a feature. Split ties break to the lowest feature index, then the lowest
threshold, so growth is reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput


@dataclass
class TreeNode:
    score: float  # leaf: class-1 probability (or raw value for boosted trees)
    gini: float
    n_samples: int
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode" = None
    right: "TreeNode" = None

    @property
    def is_leaf(self):
        return self.left is None

    def walk(self):
        yield self
        if not self.is_leaf:
            yield from self.left.walk()
            yield from self.right.walk()


def gini_impurity(y):
    n = len(y)
    if n == 0:
        return 0.0
    p = float(np.sum(y)) / n
    return 2.0 * p * (1.0 - p)


def _best_gini_split(X, y, feature_indices, min_samples_leaf):
    """(feature, threshold, weighted child gini) minimizing impurity, or None."""
    n = len(y)
    best = None  # (weighted_gini, feature, threshold)
    for f in feature_indices:
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        sv = col[order]
        sy = y[order]
        boundaries = np.flatnonzero(sv[:-1] != sv[1:])
        if len(boundaries) == 0:
            continue
        pos_cum = np.cumsum(sy)
        n_left = boundaries + 1
        n_right = n - n_left
        pos_left = pos_cum[boundaries]
        pos_right = pos_cum[-1] - pos_left
        p_l = pos_left / n_left
        p_r = pos_right / n_right
        weighted = (n_left * 2 * p_l * (1 - p_l) + n_right * 2 * p_r * (1 - p_r)) / n
        thresholds = (sv[boundaries] + sv[boundaries + 1]) / 2.0
        j = int(np.argmin(weighted))  # first occurrence = lowest threshold
        cand = (float(weighted[j]), int(f), float(thresholds[j]))
        if best is None or cand[0] < best[0]:
            best = cand
    if best is None:
        return None
    return best[1], best[2], best[0]


def _grow(X, y, depth, cfg, rng, feature_subset_size):
    n = len(y)
    node_gini = gini_impurity(y)
    score = float(np.mean(y)) if n else 0.0
    node = TreeNode(score=score, gini=node_gini, n_samples=n)
    if (
        node_gini == 0.0
        or n < cfg.min_samples_leaf
        or (cfg.max_depth is not None and depth >= cfg.max_depth)
    ):
        return node

    n_features = X.shape[1]
    if feature_subset_size is not None and feature_subset_size < n_features:
        feats = np.sort(rng.choice(n_features, size=feature_subset_size, replace=False))
    else:
        feats = np.arange(n_features)

    found = _best_gini_split(X, y, feats, cfg.min_samples_leaf)
    if found is None:
        return node
    feature, threshold, child_gini = found
    if child_gini >= node_gini:  # no strict impurity reduction
        return node
    mask = X[:, feature] <= threshold
    node.feature = feature
    node.threshold = threshold
    node.left = _grow(X[mask], y[mask], depth + 1, cfg, rng, feature_subset_size)
    node.right = _grow(X[~mask], y[~mask], depth + 1, cfg, rng, feature_subset_size)
    return node


def fit_tree(X, y, cfg, rng=None, feature_subset_size=None):
    """Grow a CART tree; leaf score is the positive-label fraction."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(y) == 0:
        raise EmptyInput("cannot fit a tree on zero rows")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    return _grow(X, y, 0, cfg, rng, feature_subset_size)


def tree_predict(node, X):
    X = np.asarray(X, dtype=np.float64)
    out = np.empty(len(X))
    for i, row in enumerate(X):
        cur = node
        while not cur.is_leaf:
            cur = cur.left if row[cur.feature] <= cur.threshold else cur.right
        out[i] = cur.score
    return out
