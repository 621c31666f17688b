import numpy as np
import pytest

from imbtab.errors import DimensionMismatch, EmptyInput
from imbtab.models import (
    ModelConfig,
    classify,
    fit_forest,
    fit_gbt,
    fit_logistic,
    fit_model,
    fit_tree,
    forest_predict_proba,
    linear_predict_proba,
    logistic_gradient,
    logistic_loss,
    model_from_json,
    model_to_json,
    sigmoid,
    tree_predict,
)


def lr_cfg(**kw):
    return ModelConfig.for_family("lr", **kw)


def dt_cfg(**kw):
    return ModelConfig.for_family("dt", **kw)


class TestLogistic:
    def test_symmetric_data_gives_half(self):
        X = np.array([[-1.0], [1.0]])
        y = np.array([0, 1])
        m = fit_logistic(X, y, lr_cfg(iterations=200))
        assert linear_predict_proba(m, np.array([[0.0]]))[0] == pytest.approx(0.5)

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(5, 3))
        y = rng.integers(0, 2, size=5).astype(float)
        w = rng.normal(size=3)
        b = float(rng.normal())
        l2 = 0.3
        gw, gb = logistic_gradient(X, y, w, b, l2)
        h = 1e-5
        for j in range(3):
            e = np.zeros(3)
            e[j] = h
            fd = (logistic_loss(X, y, w + e, b, l2) - logistic_loss(X, y, w - e, b, l2)) / (2 * h)
            assert abs(gw[j] - fd) / max(abs(fd), 1e-12) < 1e-6
        fd_b = (logistic_loss(X, y, w, b + h, l2) - logistic_loss(X, y, w, b - h, l2)) / (2 * h)
        assert abs(gb - fd_b) / max(abs(fd_b), 1e-12) < 1e-6

    def test_separable_reaches_perfect_accuracy(self):
        X = np.array([[-1.0], [1.0]])
        y = np.array([0, 1])
        m = fit_logistic(X, y, lr_cfg(l2=0.0, iterations=5000, learning_rate=1.0))
        preds = classify(linear_predict_proba(m, X), 0.5)
        assert preds.tolist() == [0, 1]

    def test_loss_nonincreasing(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(40, 3))
        y = (X[:, 0] + 0.3 * rng.normal(size=40) > 0).astype(float)
        cfg = lr_cfg(learning_rate=0.05, iterations=1)
        w = np.zeros(3)
        b = 0.0
        prev = logistic_loss(X, y, w, b, cfg.l2)
        for _ in range(50):
            gw, gb = logistic_gradient(X, y, w, b, cfg.l2)
            w -= cfg.learning_rate * gw
            b -= cfg.learning_rate * gb
            cur = logistic_loss(X, y, w, b, cfg.l2)
            assert cur <= prev + 1e-12
            prev = cur

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            fit_logistic(np.empty((0, 2)), np.empty(0), lr_cfg())


class TestTree:
    def test_single_feature_split(self):
        X = np.array([[0.0], [1.0]])
        y = np.array([0, 1])
        t = fit_tree(X, y, dt_cfg(min_samples_leaf=1))
        assert t.feature == 0 and t.threshold == pytest.approx(0.5)
        assert tree_predict(t, X).tolist() == [0.0, 1.0]

    def test_pure_node_is_leaf(self):
        t = fit_tree(np.array([[0.0], [1.0]]), np.array([1, 1]), dt_cfg())
        assert t.is_leaf and t.gini == 0.0 and t.score == 1.0

    def test_constant_zero_labels(self):
        t = fit_tree(np.array([[0.0], [1.0], [2.0]]), np.zeros(3), dt_cfg())
        assert t.is_leaf and t.score == 0.0

    def test_gini_range_on_all_nodes(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(200, 4))
        y = (X[:, 0] * X[:, 1] > 0).astype(float)
        t = fit_tree(X, y, dt_cfg(max_depth=6, min_samples_leaf=2))
        for node in t.walk():
            assert 0.0 <= node.gini <= 0.5

    def test_unlimited_depth_memorizes(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(80, 3))
        y = rng.integers(0, 2, size=80).astype(float)
        t = fit_tree(X, y, dt_cfg(max_depth=None, min_samples_leaf=1))
        assert np.array_equal(classify(tree_predict(t, X), 0.5), y.astype(int))

    def test_tie_breaks_prefer_lower_feature(self):
        # identical columns: the split must use feature 0
        X = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
        y = np.array([0, 0, 1, 1])
        t = fit_tree(X, y, dt_cfg(min_samples_leaf=1))
        assert t.feature == 0

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            fit_tree(np.empty((0, 1)), np.empty(0), dt_cfg())


class TestForest:
    def test_single_tree_no_bootstrap_matches_tree(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(60, 3))
        y = (X[:, 0] > 0).astype(float)
        cfg = ModelConfig.for_family(
            "rf", n_trees=1, bootstrap=False, feature_subset_size=3, min_samples_leaf=1
        )
        f = fit_forest(X, y, cfg)
        t = fit_tree(X, y, cfg)
        assert np.array_equal(forest_predict_proba(f, X), tree_predict(t, X))

    def test_probability_is_mean_of_leaf_scores(self):
        from imbtab.models.tree import TreeNode
        from imbtab.models.forest import ForestModel

        trees = [TreeNode(score=s, gini=0.0, n_samples=1) for s in (1.0, 1.0, 0.0)]
        f = ForestModel(trees=trees, feature_subset_size=1, bootstrap=True, seed=0)
        assert forest_predict_proba(f, np.zeros((1, 2)))[0] == pytest.approx(2 / 3)

    def test_separable_training_accuracy(self):
        X = np.array([[-2.0], [-1.0], [1.0], [2.0]] * 5)
        y = np.array([0, 0, 1, 1] * 5)
        cfg = ModelConfig.for_family("rf", n_trees=50, min_samples_leaf=1, seed=9)
        f = fit_forest(X, y, cfg)
        assert np.array_equal(classify(forest_predict_proba(f, X), 0.5), y)

    def test_seed_determinism(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(50, 4))
        y = rng.integers(0, 2, size=50).astype(float)
        cfg = ModelConfig.for_family("rf", n_trees=10, seed=21)
        a = fit_forest(X, y, cfg)
        b = fit_forest(X, y, cfg)
        assert np.array_equal(forest_predict_proba(a, X), forest_predict_proba(b, X))


class TestBoosting:
    def test_zero_rounds_balanced_base(self):
        X = np.array([[0.0], [1.0]])
        y = np.array([0, 1])
        m = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=0))
        assert m.base_score == pytest.approx(0.0)
        fm = fit_model(X, y, ModelConfig.for_family("xgb", rounds=0))
        assert fm.predict_proba(X) == pytest.approx([0.5, 0.5])

    def test_zero_learning_rate_keeps_base(self):
        rng = np.random.default_rng(6)
        X = rng.normal(size=(30, 2))
        y = rng.integers(0, 2, size=30).astype(float)
        m0 = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=0))
        m = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=5, learning_rate=0.0))
        assert sigmoid(m.base_score) == pytest.approx(sigmoid(m0.base_score))
        from imbtab.models.boosting import gbt_predict_proba

        assert gbt_predict_proba(m, X) == pytest.approx(np.full(30, sigmoid(m.base_score)))

    def test_one_round_reduces_log_loss(self):
        X = np.array([[-2.0], [-1.0], [1.0], [2.0]])
        y = np.array([0.0, 0.0, 1.0, 1.0])

        def log_loss(p):
            p = np.clip(p, 1e-12, 1 - 1e-12)
            return -np.mean(y * np.log(p) + (1 - y) * np.log(1 - p))

        from imbtab.models.boosting import gbt_predict_proba

        base = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=0))
        one = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=1, max_depth=1))
        assert log_loss(gbt_predict_proba(one, X)) < log_loss(gbt_predict_proba(base, X))

    def test_large_l2_shrinks_leaves(self):
        rng = np.random.default_rng(7)
        X = rng.normal(size=(40, 2))
        y = (X[:, 0] > 0).astype(float)

        def max_abs_leaf(model):
            return max(
                abs(n.score) for t in model.trees for n in t.walk() if n.is_leaf
            )

        small = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=3, l2=1.0, seed=1))
        large = fit_gbt(X, y, ModelConfig.for_family("xgb", rounds=3, l2=1e6, seed=1))
        assert max_abs_leaf(large) < max_abs_leaf(small)
        assert max_abs_leaf(large) < 1e-4

    def test_degenerate_label_mean_clamped(self):
        X = np.array([[0.0], [1.0]])
        m = fit_gbt(X, np.ones(2), ModelConfig.for_family("xgb", rounds=0))
        assert np.isfinite(m.base_score)


class TestContract:
    def test_classify_rules(self):
        assert classify([0.4, 0.6], 0.5).tolist() == [0, 1]
        assert classify([0.5], 0.5).tolist() == [1]  # >= rule
        assert classify([0.6], 0.99).tolist() == [0]

    def test_probabilities_in_unit_interval(self):
        rng = np.random.default_rng(8)
        X = rng.normal(size=(30, 3))
        y = rng.integers(0, 2, size=30)
        for family in ("lr", "dt", "rf", "xgb"):
            cfg = ModelConfig.for_family(family, **({"n_trees": 5} if family == "rf" else {}))
            if family == "xgb":
                cfg = ModelConfig.for_family(family, rounds=5)
            p = fit_model(X, y, cfg).predict_proba(X)
            assert np.all((p >= 0) & (p <= 1)) and np.all(np.isfinite(p))

    def test_dimension_mismatch(self):
        X = np.array([[0.0, 1.0], [1.0, 0.0]])
        m = fit_model(X, [0, 1], lr_cfg())
        with pytest.raises(DimensionMismatch):
            m.predict_proba(np.zeros((2, 3)))

    @pytest.mark.parametrize("family", ["lr", "dt", "rf", "xgb"])
    def test_json_roundtrip(self, family):
        rng = np.random.default_rng(9)
        X = rng.normal(size=(40, 3))
        y = (X[:, 0] > 0).astype(int)
        overrides = {"rf": {"n_trees": 5}, "xgb": {"rounds": 5}}.get(family, {})
        m = fit_model(X, y, ModelConfig.for_family(family, **overrides))
        back = model_from_json(model_to_json(m))
        assert np.allclose(back.predict_proba(X), m.predict_proba(X))
