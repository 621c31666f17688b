"""Categorical-to-numeric feature transforms.

One-hot indicators with a frozen vocabulary, rare-category merging, manual
grouping, and impact encoding (per-category deviation of the conditional
target mean from the global target mean). Impact maps are fitted on training
data only and applied unchanged elsewhere.
"""

from __future__ import annotations

import json
from collections import Counter, OrderedDict
from dataclasses import dataclass

import numpy as np

from .data import CATEGORICAL, MISSING, Dataset
from .errors import (
    EmptyCategoryList,
    EmptyDataset,
    NotCategorical,
    ReservedCategory,
    UnmappedCategory,
    UnseenCategory,
)

OTHER_TOKEN = "__OTHER__"


@dataclass(frozen=True)
class FeatureMatrix:
    column_names: tuple
    values: np.ndarray  # row-major float64, all finite

    def __post_init__(self):
        object.__setattr__(self, "column_names", tuple(self.column_names))
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2:
            raise ValueError("feature matrix must be 2-D")
        if vals.shape[1] != len(self.column_names):
            raise ValueError("column_names length does not match matrix width")
        if vals.size and not np.all(np.isfinite(vals)):
            raise ValueError("feature matrix contains non-finite values")
        object.__setattr__(self, "values", vals)

    @property
    def n_rows(self):
        return self.values.shape[0]

    @property
    def n_cols(self):
        return self.values.shape[1]

    @staticmethod
    def hstack(parts):
        names = tuple(n for p in parts for n in p.column_names)
        if not parts:
            return FeatureMatrix((), np.zeros((0, 0)))
        vals = np.hstack([p.values for p in parts])
        return FeatureMatrix(names, vals)

    def take_rows(self, indices):
        return FeatureMatrix(self.column_names, self.values[np.asarray(indices, dtype=int)])


@dataclass(frozen=True)
class CategoryMap:
    """Fitted impact-encoding statistics for one categorical column."""

    column: str
    global_mean: float
    per_category: OrderedDict  # category -> (count, cond_mean, impact)
    fallback_impact: float = 0.0

    def impact(self, category):
        entry = self.per_category.get(category)
        return entry[2] if entry is not None else self.fallback_impact

    def to_json(self):
        return json.dumps(
            {
                "column": self.column,
                "global_mean": self.global_mean,
                "categories": [
                    {"value": v, "count": n, "cond_mean": m, "impact": imp}
                    for v, (n, m, imp) in self.per_category.items()
                ],
                "fallback_impact": self.fallback_impact,
            }
        )

    @staticmethod
    def from_json(text):
        doc = json.loads(text)
        per = OrderedDict(
            (c["value"], (c["count"], c["cond_mean"], c["impact"])) for c in doc["categories"]
        )
        return CategoryMap(doc["column"], doc["global_mean"], per, doc["fallback_impact"])


def _require_categorical(d, column):
    if d.column_kind(column) != CATEGORICAL:
        raise NotCategorical(f"column {column!r} has kind {d.column_kind(column)!r}")


def fit_categories(d, column):
    """Sorted distinct category vocabulary of a column (MISSING excluded)."""
    _require_categorical(d, column)
    return sorted({v for v in d.column(column) if v is not MISSING})


def one_hot_encode(d, column, categories, mode="lenient"):
    """K indicator columns named ``column=category``.

    Unseen values raise in strict mode; in lenient mode the row is all zeros.
    """
    categories = list(categories)
    if not categories:
        raise EmptyCategoryList(column)
    if len(set(categories)) != len(categories):
        raise ValueError(f"duplicate categories for {column!r}")
    pos = {c: j for j, c in enumerate(categories)}
    cells = d.column(column)
    out = np.zeros((len(cells), len(categories)))
    for i, v in enumerate(cells):
        j = pos.get(v)
        if j is None:
            if mode == "strict":
                raise UnseenCategory(f"{column!r}: {v!r} not in fitted vocabulary")
            continue
        out[i, j] = 1.0
    names = tuple(f"{column}={c}" for c in categories)
    return FeatureMatrix(names, out)


def category_counts(d, column):
    _require_categorical(d, column)
    return Counter(v for v in d.column(column) if v is not MISSING)


def merge_rare_categories(d, column, min_count):
    """Replace categories observed fewer than min_count times by __OTHER__."""
    counts = category_counts(d, column)
    if OTHER_TOKEN in counts:
        raise ReservedCategory(f"{OTHER_TOKEN!r} occurs as a raw category in {column!r}")
    rare = {c for c, n in counts.items() if n < min_count}
    values = [OTHER_TOKEN if v in rare else v for v in d.column(column)]
    return d.replace_column(column, values)


def group_categories(d, column, mapping, mode="lenient"):
    """Replace mapped categories by their group token; unmapped pass through (lenient)."""
    _require_categorical(d, column)
    values = []
    for v in d.column(column):
        if v is MISSING or v not in mapping:
            if v is not MISSING and mode == "strict":
                raise UnmappedCategory(f"{column!r}: {v!r} has no group")
            values.append(v)
        else:
            values.append(mapping[v])
    return d.replace_column(column, values)


def impact_encode_fit(d, column):
    """Fit per-category impact values against the {0,1} target.

    impact(category) = mean(y | category) - mean(y). Unseen categories fall
    back to impact 0, i.e. the global mean.
    """
    _require_categorical(d, column)
    if d.row_count == 0:
        raise EmptyDataset(f"cannot fit impact encoding for {column!r} on an empty dataset")
    y = np.asarray(d.column(d.target_name), dtype=np.float64)
    cells = d.column(column)
    global_mean = float(y.mean())
    sums = {}
    counts = Counter()
    for v, yi in zip(cells, y):
        counts[v] += 1
        sums[v] = sums.get(v, 0.0) + yi
    per = OrderedDict()
    for cat in sorted(counts):
        cond = sums[cat] / counts[cat]
        per[cat] = (counts[cat], cond, cond - global_mean)
    return CategoryMap(column, global_mean, per, fallback_impact=0.0)


def impact_encode_apply(d, cmap):
    """Single numeric column of impact values (fallback for unseen categories)."""
    values = np.array([cmap.impact(v) for v in d.column(cmap.column)], dtype=np.float64)
    return FeatureMatrix((f"{cmap.column}~impact",), values.reshape(-1, 1))
