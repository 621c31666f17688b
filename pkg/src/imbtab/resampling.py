"""Class rebalancing: SMOTE oversampling and NearMiss undersampling.

All neighbor queries are exact brute-force Euclidean searches; at the row
counts this toolkit targets (tens of thousands) a spatial index buys nothing.
Every random draw comes from one seeded generator consumed in a fixed order,
so a seed fully determines the output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import FeatureMatrix
from .errors import (
    EmptyMinority,
    KTooLarge,
    StrategyUnknown,
    TooFewMinoritySamples,
)

STRATEGIES = ("none", "smote", "nearmiss1", "nearmiss2", "nearmiss3", "random_over", "random_under")
SMOTE_MODES = ("canonical", "paper_literal")

# amount value meaning "pick the count that equalizes the classes"
BALANCE = "balance"


@dataclass(frozen=True)
class ResampleConfig:
    strategy: str = "none"
    k: int = 5
    amount: object = BALANCE  # int, or BALANCE
    seed: int = 0
    smote_mode: str = "canonical"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise StrategyUnknown(f"{self.strategy!r}; allowed: {list(STRATEGIES)}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.amount != BALANCE and int(self.amount) < 0:
            raise ValueError("amount must be >= 0")
        if self.smote_mode not in SMOTE_MODES:
            raise ValueError(f"smote_mode must be one of {SMOTE_MODES}")


@dataclass(frozen=True)
class NeighborIndex:
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-D array")
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class SyntheticProvenance:
    """Audit record for one synthetic row: s = base + u * (neighbor - base)."""

    base_index: int
    neighbor_index: int
    u: float


@dataclass(frozen=True)
class RebalanceResult:
    features: FeatureMatrix
    labels: np.ndarray
    original_mask: np.ndarray  # True where the row existed before resampling
    provenance: tuple = ()  # SyntheticProvenance per synthetic row (SMOTE only)


def _sq_distances(points, query):
    diff = points - query
    return np.einsum("ij,ij->i", diff, diff)


def nearest_neighbors(index, query, k, exclude_self=False, self_index=None):
    """Indices of the k Euclidean-nearest points, ascending distance, ties by index.

    With exclude_self, the query's own entry is skipped: self_index when given,
    otherwise the lowest-index point at distance zero.
    """
    query = np.asarray(query, dtype=np.float64)
    d2 = _sq_distances(index.points, query)
    eligible = np.ones(len(d2), dtype=bool)
    if exclude_self:
        if self_index is None:
            zeros = np.flatnonzero(d2 == 0.0)
            if len(zeros):
                eligible[zeros[0]] = False
        else:
            eligible[self_index] = False
    n_eligible = int(eligible.sum())
    if k > n_eligible:
        raise KTooLarge(f"k={k} but only {n_eligible} eligible points")
    idx = np.flatnonzero(eligible)
    order = np.lexsort((idx, d2[idx]))
    return [int(i) for i in idx[order][:k]]


def smote(minority, k, n_new, seed=0, mode="canonical"):
    """Generate n_new synthetic rows per minority point by neighbor interpolation.

    canonical: s = x + u * (neighbor - x), one u per synthetic row.
    paper_literal: s_j = x_j + u * |x_j - neighbor_j| per coordinate (never
    moves a coordinate downward); kept as a documented alternative geometry.
    Neighbor draws are with replacement, so n_new may exceed k.

    Returns (synthetic rows array, provenance list).
    """
    pts = np.asarray(minority, dtype=np.float64)
    if pts.ndim != 2 or len(pts) < 2:
        raise TooFewMinoritySamples(f"need >= 2 minority rows, got {len(pts)}")
    if k > len(pts) - 1:
        raise KTooLarge(f"k={k} but only {len(pts) - 1} candidate neighbors")
    if mode not in SMOTE_MODES:
        raise ValueError(f"mode must be one of {SMOTE_MODES}")

    index = NeighborIndex(pts)
    neighbor_lists = [
        nearest_neighbors(index, pts[i], k, exclude_self=True, self_index=i)
        for i in range(len(pts))
    ]
    rng = np.random.default_rng(seed)
    synthetic = np.empty((n_new * len(pts), pts.shape[1]))
    provenance = []
    row = 0
    for i in range(len(pts)):
        for _ in range(n_new):
            j = neighbor_lists[i][int(rng.integers(k))]
            u = float(rng.random())
            if mode == "canonical":
                synthetic[row] = pts[i] + u * (pts[j] - pts[i])
            else:
                synthetic[row] = pts[i] + u * np.abs(pts[i] - pts[j])
            provenance.append(SyntheticProvenance(i, j, u))
            row += 1
    return synthetic, provenance


def _mean_knn_distance(majority, minority, k, farthest=False):
    """Per-majority-point mean distance to its k nearest (or farthest) minority points."""
    if k > len(minority):
        raise KTooLarge(f"k={k} but minority has {len(minority)} points")
    scores = np.empty(len(majority))
    for i, p in enumerate(majority):
        d = np.sqrt(_sq_distances(minority, p))
        # stable selection: distance then index, reversed distance for farthest
        key = -d if farthest else d
        order = np.lexsort((np.arange(len(d)), key))
        scores[i] = d[order[:k]].mean()
    return scores


def nearmiss(majority, minority, variant, k, n=None, seed=0):
    """Kept majority row indices under NearMiss-1/2/3.

    1: n majority points with smallest mean distance to their k nearest
       minority points. 2: same but against the k farthest minority points.
    3: union of each minority point's k nearest majority points (n ignored).
    Ties always resolve to the lower index.
    """
    majority = np.asarray(majority, dtype=np.float64)
    minority = np.asarray(minority, dtype=np.float64)
    if len(minority) == 0:
        raise EmptyMinority("nearmiss requires at least one minority row")
    if variant not in (1, 2, 3):
        raise ValueError(f"variant must be 1, 2 or 3, got {variant}")

    if variant in (1, 2):
        scores = _mean_knn_distance(majority, minority, k, farthest=(variant == 2))
        order = np.lexsort((np.arange(len(scores)), scores))
        n_keep = len(majority) if n is None else min(int(n), len(majority))
        return sorted(int(i) for i in order[:n_keep])

    if k > len(majority):
        raise KTooLarge(f"k={k} but majority has {len(majority)} points")
    index = NeighborIndex(majority)
    kept = set()
    for p in minority:
        kept.update(nearest_neighbors(index, p, k))
    return sorted(kept)


def _split_by_label(features, labels):
    labels = np.asarray(labels, dtype=int)
    counts = {0: int((labels == 0).sum()), 1: int((labels == 1).sum())}
    minority_label = 1 if counts[1] <= counts[0] else 0
    min_idx = np.flatnonzero(labels == minority_label)
    maj_idx = np.flatnonzero(labels != minority_label)
    return minority_label, min_idx, maj_idx


def rebalance(features, labels, config):
    """Apply the configured strategy to a training feature matrix.

    Returns a RebalanceResult carrying the resampled matrix, labels, an
    original-vs-synthetic row mask, and SMOTE provenance when applicable.
    Only training data should ever pass through here.
    """
    X = features.values
    labels = np.asarray(labels, dtype=int)
    if config.strategy == "none":
        return RebalanceResult(features, labels, np.ones(len(labels), dtype=bool))

    minority_label, min_idx, maj_idx = _split_by_label(features, labels)
    majority_label = 1 - minority_label

    if config.strategy == "smote":
        if config.amount == BALANCE:
            n_new = max(0, round(len(maj_idx) / max(len(min_idx), 1)) - 1)
        else:
            n_new = int(config.amount)
        synthetic, provenance = smote(
            X[min_idx], config.k, n_new, seed=config.seed, mode=config.smote_mode
        )
        out = np.vstack([X, synthetic]) if len(synthetic) else X
        out_labels = np.concatenate([labels, np.full(len(synthetic), minority_label, dtype=int)])
        mask = np.concatenate([np.ones(len(labels), dtype=bool), np.zeros(len(synthetic), dtype=bool)])
        # provenance base/neighbor indices refer to minority rows; lift to matrix rows
        lifted = tuple(
            SyntheticProvenance(int(min_idx[p.base_index]), int(min_idx[p.neighbor_index]), p.u)
            for p in provenance
        )
        return RebalanceResult(FeatureMatrix(features.column_names, out), out_labels, mask, lifted)

    if config.strategy == "random_over":
        target = len(maj_idx) if config.amount == BALANCE else int(config.amount)
        n_dup = max(0, target - len(min_idx))
        rng = np.random.default_rng(config.seed)
        picks = min_idx[rng.integers(len(min_idx), size=n_dup)] if n_dup else np.array([], dtype=int)
        out = np.vstack([X, X[picks]]) if n_dup else X
        out_labels = np.concatenate([labels, np.full(n_dup, minority_label, dtype=int)])
        mask = np.concatenate([np.ones(len(labels), dtype=bool), np.zeros(n_dup, dtype=bool)])
        return RebalanceResult(FeatureMatrix(features.column_names, out), out_labels, mask)

    if config.strategy == "random_under":
        target = len(min_idx) if config.amount == BALANCE else int(config.amount)
        target = min(target, len(maj_idx))
        rng = np.random.default_rng(config.seed)
        kept_maj = np.sort(rng.choice(maj_idx, size=target, replace=False))
    elif config.strategy in ("nearmiss1", "nearmiss2", "nearmiss3"):
        variant = int(config.strategy[-1])
        target = len(min_idx) if config.amount == BALANCE else int(config.amount)
        kept = nearmiss(X[maj_idx], X[min_idx], variant, config.k, n=target, seed=config.seed)
        kept_maj = maj_idx[np.asarray(kept, dtype=int)]
    else:
        raise StrategyUnknown(config.strategy)

    kept_rows = np.sort(np.concatenate([min_idx, kept_maj]))
    out = X[kept_rows]
    out_labels = labels[kept_rows]
    mask = np.ones(len(kept_rows), dtype=bool)
    return RebalanceResult(FeatureMatrix(features.column_names, out), out_labels, mask)
