import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_dataset
from oracles import brute_predict, brute_tree
from defect_smells.classifiers import (
    ClassifierKind,
    ForestConfig,
    PnnConfig,
    forest_from_trees,
    model_from_json,
    model_to_json,
    predict,
    predict_many,
    train,
    train_naive_bayes,
    train_pnn,
    train_random_forest,
)
from defect_smells.classifiers.naive_bayes import log_joint
from defect_smells.classifiers.pnn import log_class_scores
from defect_smells.errors import SchemaMismatch, SingleClassTraining

# class A is clean (0), class B is defect-prone (1)
A, B = 0, 1


def gauss_logpdf(x, mean, var):
    return -0.5 * math.log(2 * math.pi * var) - (x - mean) ** 2 / (2 * var)


# -- naive Bayes --------------------------------------------------------------

def nb_fixture():
    return make_dataset([[0.0], [2.0], [4.0], [6.0]], [A, A, B, B])


def test_naive_bayes_hand_computed():
    model = train_naive_bayes(nb_fixture())
    # means 1 and 5, ML variance 1 in both classes, equal priors
    expect_a = math.log(0.5) + gauss_logpdf(2.0, 1.0, 1.0)
    expect_b = math.log(0.5) + gauss_logpdf(2.0, 5.0, 1.0)
    got = log_joint(model, np.array([[2.0]]))[0]
    assert got[A] == pytest.approx(expect_a, abs=1e-12)
    assert got[B] == pytest.approx(expect_b, abs=1e-12)
    assert predict(model, [2.0]) == A


@pytest.mark.parametrize("query, label", [([1.0], A), ([5.0], B)])
def test_naive_bayes_at_class_mean(query, label):
    assert predict(train_naive_bayes(nb_fixture()), query) == label


def test_naive_bayes_constant_feature_uses_floor():
    ds = make_dataset([[0.0, 7.0], [2.0, 7.0], [4.0, 7.0], [6.0, 7.0]], [A, A, B, B])
    model = train_naive_bayes(ds)
    assert np.all(model.parameters["var"][:, 1] == 1e-9)
    assert predict_many(model, [[2.0, 7.0], [5.0, 7.0]]).tolist() == [A, B]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.integers(4, 30))
def test_naive_bayes_ignores_identically_distributed_feature(seed, n):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(2 * n, 2))
    y = np.array([A] * n + [B] * n)
    X[y == B, 0] += 1.5
    # same values in both classes: identical per-class mean and variance
    extra = np.tile(rng.normal(size=n), 2)[:, None]
    base = train_naive_bayes(make_dataset(X, y))
    wide = train_naive_bayes(make_dataset(np.hstack([X, extra]), y))
    Q = rng.normal(size=(25, 3))
    assert np.array_equal(predict_many(base, Q[:, :2]), predict_many(wide, Q))


# -- PNN ----------------------------------------------------------------------

def pnn_fixture():
    return make_dataset([[0.0], [2.0], [4.0]], [A, B, B])


def test_pnn_hand_computed_kernel_sums():
    model = train_pnn(pnn_fixture(), PnnConfig(bandwidth=1.0, standardize=False))
    scores = np.exp(log_class_scores(model, np.array([[1.5]]))[0])
    assert scores[B] == pytest.approx((math.exp(-0.125) + math.exp(-3.125)) / 2, abs=1e-12)
    assert scores[A] == pytest.approx(math.exp(-1.125), abs=1e-12)
    assert scores[B] == pytest.approx(0.463, abs=5e-4)
    assert scores[A] == pytest.approx(0.325, abs=5e-4)
    assert predict(model, [1.5]) == B


def test_pnn_query_at_training_point():
    model = train_pnn(pnn_fixture(), PnnConfig(bandwidth=1e-3))
    assert [predict(model, [v]) for v in (0.0, 2.0, 4.0)] == [A, B, B]


def test_pnn_equidistant_tie_goes_to_clean():
    ds = make_dataset([[0.0], [2.0]], [A, B])
    assert predict(train_pnn(ds, PnnConfig(standardize=False)), [1.0]) == A
    ds = make_dataset([[0.0], [2.0]], [B, A])
    assert predict(train_pnn(ds, PnnConfig(standardize=False)), [1.0]) == A


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31))
def test_pnn_small_bandwidth_is_nearest_neighbour(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(12, 3))
    y = np.array([A] * 6 + [B] * 6)
    model = train_pnn(make_dataset(X, y), PnnConfig(bandwidth=1e-6, standardize=False))
    Q = rng.normal(size=(20, 3))
    d = ((Q[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
    nearest = y[np.argmin(d, axis=1)]
    assert np.array_equal(predict_many(model, Q), nearest)


# -- random forest ------------------------------------------------------------

def leaf(label):
    return {"feature": [-1], "threshold": [0.0], "left": [-1], "right": [-1], "value": [label]}


def stump(label_left, label_right, thr=0.5):
    return {"feature": [0, -1, -1], "threshold": [thr, 0, 0], "left": [1, -1, -1],
            "right": [2, -1, -1], "value": [0, label_left, label_right]}


def test_manual_stumps_majority_vote():
    forest = forest_from_trees(("x",), [leaf(A), leaf(B), leaf(B)])
    assert predict(forest, [0.0]) == B
    forest = forest_from_trees(("x",), [stump(A, B), stump(B, A), stump(A, A)])
    assert predict_many(forest, [[0.0], [1.0]]).tolist() == [A, A]


def test_forest_even_split_vote_is_clean():
    forest = forest_from_trees(("x",), [leaf(A), leaf(B)])
    assert predict(forest, [0.0]) == A


def consistent_dataset(rng, n, m):
    X = rng.integers(0, 6, size=(n, m)).astype(float)
    _, first = np.unique(X, axis=0, return_index=True)
    X = X[np.sort(first)]
    y = rng.integers(0, 2, size=len(X))
    y[0], y[-1] = 0, 1
    return X, y


def test_single_tree_fits_consistent_data():
    rng = np.random.default_rng(5)
    X, y = consistent_dataset(rng, 200, 4)
    model = train_random_forest(make_dataset(X, y), ForestConfig(n_trees=1, bootstrap=False, features_per_split=2))
    assert np.array_equal(predict_many(model, X), y)


def test_forest_is_deterministic_and_order_invariant():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(120, 5))
    y = (X[:, 0] + 0.5 * rng.normal(size=120) > 0.8).astype(int)
    ds = make_dataset(X, y)
    cfg = ForestConfig(n_trees=15, seed=4)
    Q = rng.normal(size=(60, 5))
    first = predict_many(train_random_forest(ds, cfg), Q)
    assert np.array_equal(first, predict_many(train_random_forest(ds, cfg), Q))
    perm = rng.permutation(len(ds))
    shuffled = ds.subset(perm)
    assert np.array_equal(first, predict_many(train_random_forest(shuffled, cfg), Q))


@pytest.mark.parametrize("kind", list(ClassifierKind))
def test_order_invariance_all_kinds(kind):
    rng = np.random.default_rng(8)
    X = rng.normal(size=(50, 3))
    y = (X[:, 1] > 0.3).astype(int)
    ds = make_dataset(X, y)
    Q = rng.normal(size=(30, 3))
    cfg = ForestConfig(n_trees=7)
    a = predict_many(train(kind, ds, forest=cfg), Q)
    b = predict_many(train(kind, ds.subset(rng.permutation(50)), forest=cfg), Q)
    assert np.array_equal(a, b)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(4, 20), st.integers(1, 4))
def test_single_tree_matches_exhaustive_cart(seed, n, m):
    rng = np.random.default_rng(seed)
    X = rng.integers(0, 5, size=(n, m)).astype(float)
    y = rng.integers(0, 2, size=n)
    y[0], y[1] = 0, 1
    ds = make_dataset(X, y)
    model = train_random_forest(ds, ForestConfig(n_trees=1, bootstrap=False, features_per_split=m))
    oracle = brute_tree([(tuple(x), int(lab)) for x, lab in zip(X, y)])
    grid = np.array(np.meshgrid(*[np.arange(-0.5, 5.0, 0.5)] * m)).reshape(m, -1).T[:400]
    Q = np.vstack([X, grid])
    assert predict_many(model, Q).tolist() == [brute_predict(oracle, q) for q in Q]


# -- shared contract ----------------------------------------------------------

@pytest.mark.parametrize("kind", list(ClassifierKind))
def test_schema_mismatch(kind):
    model = train(kind, nb_fixture(), forest=ForestConfig(n_trees=3))
    with pytest.raises(SchemaMismatch):
        predict(model, [1.0, 2.0])
    with pytest.raises(SchemaMismatch):
        predict_many(model, np.zeros((3, 2)))


@pytest.mark.parametrize("kind", list(ClassifierKind))
def test_single_class_training(kind):
    with pytest.raises(SingleClassTraining):
        train(kind, make_dataset([[0.0], [1.0]], [A, A]))


@pytest.mark.parametrize("kind", list(ClassifierKind))
def test_json_round_trip_is_exact(kind):
    rng = np.random.default_rng(3)
    X = rng.normal(size=(40, 3)) / 7
    ds = make_dataset(X, (X[:, 0] > 0).astype(int))
    model = train(kind, ds, forest=ForestConfig(n_trees=5))
    text = model_to_json(model)
    back = model_from_json(text)
    assert model_to_json(back) == text
    Q = rng.normal(size=(50, 3))
    assert np.array_equal(predict_many(model, Q), predict_many(back, Q))
    if kind is ClassifierKind.NAIVE_BAYES:
        assert np.array_equal(log_joint(model, Q), log_joint(back, Q))
