"""Shared model contract: configuration, probability prediction, thresholding,
and JSON serialization for every classifier family."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionMismatch
from .boosting import BoostedModel, fit_gbt, gbt_predict_proba
from .forest import ForestModel, fit_forest, forest_predict_proba
from .logistic import LinearModel, fit_logistic, linear_predict_proba
from .tree import TreeNode, fit_tree, tree_predict

FAMILIES = ("lr", "dt", "rf", "xgb")

MODEL_FORMAT_VERSION = "model_v1"

# Documented defaults per family; the ones a family does not use are ignored.
_DEFAULTS = {
    "lr": dict(learning_rate=0.1, iterations=500, l2=1e-4, tolerance=1e-6),
    "dt": dict(max_depth=8, min_samples_leaf=5),
    "rf": dict(n_trees=100, max_depth=8, min_samples_leaf=5, bootstrap=True),
    "xgb": dict(rounds=100, learning_rate=0.1, max_depth=4, l2=1.0, min_samples_leaf=1),
}


@dataclass
class ModelConfig:
    family: str
    name: str = ""
    learning_rate: float = 0.1
    iterations: int = 500
    rounds: int = 100
    max_depth: int = 8
    min_samples_leaf: int = 5
    n_trees: int = 100
    l2: float = 1e-4
    tolerance: float = 1e-6
    bootstrap: bool = True
    feature_subset_size: int = None  # None -> ceil(sqrt(n_cols)) in forests
    seed: int = 0
    threshold: float = 0.5

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not self.name:
            self.name = self.family.upper()
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must be in (0,1)")
        for attr in ("n_trees", "min_samples_leaf"):
            if getattr(self, attr) < 1:
                raise ValueError(f"{attr} must be >= 1")
        for attr in ("iterations", "rounds"):
            if getattr(self, attr) < 0:
                raise ValueError(f"{attr} must be >= 0")
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be >= 0")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")

    @staticmethod
    def for_family(family, **overrides):
        params = dict(_DEFAULTS[family])
        params.update(overrides)
        return ModelConfig(family=family, **params)


def fit_model(X, y, cfg):
    fitter = {"lr": fit_logistic, "dt": fit_tree, "rf": fit_forest, "xgb": fit_gbt}[cfg.family]
    model = fitter(X, y, cfg)
    return FittedModel(family=cfg.family, model=model, n_features=np.asarray(X).shape[1])


@dataclass
class FittedModel:
    family: str
    model: object
    n_features: int

    def predict_proba(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise DimensionMismatch(
                f"expected {self.n_features} feature columns, got shape {X.shape}"
            )
        if self.family == "lr":
            p = linear_predict_proba(self.model, X)
        elif self.family == "dt":
            p = tree_predict(self.model, X)
        elif self.family == "rf":
            p = forest_predict_proba(self.model, X)
        else:
            p = gbt_predict_proba(self.model, X)
        return np.clip(p, 0.0, 1.0)


def classify(probs, threshold=0.5):
    """Hard labels: 1 iff probability >= threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0,1)")
    return (np.asarray(probs) >= threshold).astype(int)


# --- serialization --------------------------------------------------------


def _node_to_doc(node):
    if node.is_leaf:
        return {"score": node.score, "gini": node.gini, "n": node.n_samples}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "gini": node.gini,
        "n": node.n_samples,
        "score": node.score,
        "left": _node_to_doc(node.left),
        "right": _node_to_doc(node.right),
    }


def _node_from_doc(doc):
    node = TreeNode(score=doc["score"], gini=doc["gini"], n_samples=doc["n"])
    if "feature" in doc:
        node.feature = doc["feature"]
        node.threshold = doc["threshold"]
        node.left = _node_from_doc(doc["left"])
        node.right = _node_from_doc(doc["right"])
    return node


def model_to_json(fitted):
    m = fitted.model
    doc = {"version": MODEL_FORMAT_VERSION, "family": fitted.family, "n_features": fitted.n_features}
    if fitted.family == "lr":
        doc["weights"] = list(m.weights)
        doc["bias"] = m.bias
        doc["final_loss"] = m.final_loss
        doc["iterations"] = m.iterations
    elif fitted.family == "dt":
        doc["tree"] = _node_to_doc(m)
    elif fitted.family == "rf":
        doc.update(
            trees=[_node_to_doc(t) for t in m.trees],
            feature_subset_size=m.feature_subset_size,
            bootstrap=m.bootstrap,
            seed=m.seed,
        )
    else:
        doc.update(
            base_score=m.base_score,
            trees=[_node_to_doc(t) for t in m.trees],
            learning_rate=m.learning_rate,
            l2_lambda=m.l2_lambda,
            rounds=m.rounds,
        )
    return json.dumps(doc)


def model_from_json(text):
    doc = json.loads(text)
    if doc.get("version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format {doc.get('version')!r}")
    family = doc["family"]
    if family == "lr":
        model = LinearModel(
            weights=np.asarray(doc["weights"], dtype=np.float64),
            bias=doc["bias"],
            final_loss=doc["final_loss"],
            iterations=doc["iterations"],
        )
    elif family == "dt":
        model = _node_from_doc(doc["tree"])
    elif family == "rf":
        model = ForestModel(
            trees=[_node_from_doc(t) for t in doc["trees"]],
            feature_subset_size=doc["feature_subset_size"],
            bootstrap=doc["bootstrap"],
            seed=doc["seed"],
        )
    elif family == "xgb":
        model = BoostedModel(
            base_score=doc["base_score"],
            trees=[_node_from_doc(t) for t in doc["trees"]],
            learning_rate=doc["learning_rate"],
            l2_lambda=doc["l2_lambda"],
            rounds=doc["rounds"],
        )
    else:
        raise ValueError(f"unknown model family {family!r}")
    return FittedModel(family=family, model=model, n_features=doc["n_features"])
