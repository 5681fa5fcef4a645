import math

import numpy as np
import pytest

from rmcs import toy
from rmcs.classifiers import (KINDS, ClassifierSpec, StumpModel, UnsupportedWeightsError, fit,
                              load_roster_config, majority_vote, parse_roster, predict)
from rmcs.data import Dataset, make_prototype_data

from oracles import exhaustive_stump_error


def realizable(seed=0, n=60, d=5):
    rng = np.random.default_rng(seed)
    X = rng.integers(0, 2, size=(n, d))
    return Dataset.from_arrays(X, X[:, 2])


def blobs(seed=0, n=100):
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], n // 2)
    X = rng.normal(size=(n, 2)) * 0.5 + np.where(y[:, None] == 1, 3.0, -3.0)
    return Dataset.from_arrays(X, y)


def test_majority_vote_ties_go_low():
    assert majority_vote([2, 1, 2, 1]) == 1
    assert majority_vote([0, 1, 1]) == 1
    assert majority_vote([3]) == 3
    with pytest.raises(ValueError):
        majority_vote([])


def test_spec_validation():
    assert ClassifierSpec("knn").params["k"] == 3
    for bad in [dict(kind="svm"), dict(kind="knn", params={"k": 0}),
                dict(kind="naive_bayes", params={"alpha": 0}),
                dict(kind="logistic_regression", params={"max_epochs": 0}),
                dict(kind="knn", params={"gamma": 1})]:
        with pytest.raises(ValueError):
            ClassifierSpec(**bad)


def test_stump_is_exhaustive_minimum_on_toy():
    train = toy.train_dataset()
    w = np.full(8, 1 / 8)
    model = fit(ClassifierSpec("decision_stump"), train, weights=w)
    err = float(w[model.predict_many(train.features) != train.labels].sum())
    assert err == pytest.approx(exhaustive_stump_error(train.features, train.labels, w, 2))
    assert err == pytest.approx(model.error)


@pytest.mark.parametrize("seed", range(10))
def test_stump_matches_oracle_with_random_weights(seed):
    rng = np.random.default_rng(seed)
    X = rng.integers(0, 4, size=(25, 3)).astype(float)
    y = rng.integers(0, 3, size=25)
    w = rng.random(25)
    w /= w.sum()
    ds = Dataset.from_arrays(X, y, label_names=["a", "b", "c"])
    model = fit(ClassifierSpec("decision_stump"), ds, weights=w)
    err = float(w[model.predict_many(X) != y].sum())
    assert err == pytest.approx(exhaustive_stump_error(X, y, w, 3), abs=1e-12)


def test_stump_flip_flips_prediction():
    train = toy.train_dataset()
    model = fit(ClassifierSpec("decision_stump"), train)
    assert isinstance(model, StumpModel) and model.left_class != model.right_class
    for x in toy.FEATURES:
        flipped = x.copy()
        flipped[model.feature] = 1 - flipped[model.feature]
        assert predict(model, x) != predict(model, flipped)


@pytest.mark.parametrize("kind", KINDS)
def test_single_class_training(kind):
    ds = Dataset.from_arrays([[0, 1], [1, 1], [1, 0]], [1, 1, 1], label_names=["a", "b"])
    model = fit(ClassifierSpec(kind), ds)
    assert all(model.predict(x) == 1 for x in [[0, 0], [1, 1], [5, -3]])


def test_logistic_regression_separable_blobs():
    ds = blobs()
    model = fit(ClassifierSpec("logistic_regression"), ds)
    assert np.mean(model.predict_many(ds.features) == ds.labels) >= 0.99


def test_knn_k1_returns_training_label():
    ds = make_prototype_data(40, seed=3)
    model = fit(ClassifierSpec("knn", {"k": 1, "distance": "hamming"}), ds)
    # duplicate rows may carry different labels; the lowest id wins
    for i, x in enumerate(ds.features):
        first = int(np.flatnonzero((ds.features == x).all(axis=1))[0])
        assert model.predict(x) == ds.labels[first]


def test_naive_bayes_matches_hand_posterior():
    train = toy.train_dataset()
    alpha = 1.0
    model = fit(ClassifierSpec("naive_bayes", {"alpha": alpha}), train)
    X, y = train.features.astype(int), train.labels
    for x in toy.FEATURES.astype(int):
        post = []
        for c in (0, 1):
            rows = [X[i] for i in range(8) if y[i] == c]
            lp = math.log((len(rows) + alpha) / (8 + 2 * alpha))
            for j in range(4):
                ones = sum(r[j] for r in rows)
                p1 = (ones + alpha) / (len(rows) + 2 * alpha)
                lp += math.log(p1 if x[j] else 1 - p1)
            post.append(lp)
        expected = 0 if post[0] >= post[1] else 1
        assert model.predict(x) == expected
        np.testing.assert_allclose(model.joint_log_likelihood(x[None, :].astype(float))[0], post)


def test_naive_bayes_weights_reweight_counts():
    train = toy.train_dataset()
    w = np.full(8, 1 / 8)
    a = fit(ClassifierSpec("naive_bayes"), train)
    b = fit(ClassifierSpec("naive_bayes"), train, weights=w)
    np.testing.assert_allclose(a.joint_log_likelihood(toy.FEATURES), b.joint_log_likelihood(toy.FEATURES))


def test_gaussian_naive_bayes_on_numeric():
    ds = blobs(1)
    model = fit(ClassifierSpec("naive_bayes"), ds)
    assert np.mean(model.predict_many(ds.features) == ds.labels) >= 0.99


@pytest.mark.parametrize("kind", ["knn", "logistic_regression"])
def test_weights_rejected(kind):
    train = toy.train_dataset()
    with pytest.raises(UnsupportedWeightsError):
        fit(ClassifierSpec(kind), train, weights=np.full(8, 1 / 8))


def test_weight_validation():
    train = toy.train_dataset()
    stump = ClassifierSpec("decision_stump")
    for w in [np.full(7, 1 / 7), np.full(8, 0.5), -np.full(8, 1 / 8)]:
        with pytest.raises(ValueError):
            fit(stump, train, weights=w)


def test_empty_training_set():
    with pytest.raises(ValueError):
        fit(ClassifierSpec("knn"), toy.train_dataset().subset([]))


@pytest.mark.parametrize("kind", KINDS)
def test_realizable_target_is_learned_exactly(kind):
    ds = realizable()
    params = {"k": 1, "distance": "hamming"} if kind == "knn" else {}
    model = fit(ClassifierSpec(kind, params), ds)
    assert np.array_equal(model.predict_many(ds.features), ds.labels)


@pytest.mark.parametrize("kind", ["knn", "logistic_regression", "naive_bayes"])
def test_multiclass_outputs_all_classes(kind):
    ds = make_prototype_data(150, noise=0.05, seed=4)
    model = fit(ClassifierSpec(kind), ds)
    assert set(model.predict_many(ds.features)) == {0, 1, 2}


def test_stump_multiclass_uses_weighted_majority_per_side():
    X = [[0], [0], [1], [1], [2], [2]]
    ds = Dataset.from_arrays(X, [0, 0, 1, 1, 2, 2])
    model = fit(ClassifierSpec("decision_stump"), ds)
    assert len(set(model.predict_many(ds.features))) == 2


@pytest.mark.parametrize("kind", KINDS)
def test_predict_is_pure_and_checks_arity(kind):
    ds = make_prototype_data(50, seed=5)
    model = fit(ClassifierSpec(kind), ds)
    first = model.predict_many(ds.features)
    assert np.array_equal(first, model.predict_many(ds.features))
    with pytest.raises(ValueError):
        model.predict(np.zeros(ds.n_features + 1))


def test_parse_roster():
    roster = parse_roster("knn, naive_bayes,knn")
    assert [s.name for s in roster] == ["knn#1", "naive_bayes", "knn#2"]
    with pytest.raises(ValueError):
        parse_roster(" , ")
    with pytest.raises(ValueError):
        parse_roster("svm")


def test_roster_config(tmp_path):
    cfg = tmp_path / "roster.ini"
    cfg.write_text("[near]\nkind = knn\nk = 5\ndistance = minkowski:1\n\n"
                   "[logit]\nkind = logistic_regression\nl2 = 0.01\n")
    roster = load_roster_config(cfg)
    assert [s.name for s in roster] == ["near", "logit"]
    assert roster[0].params["k"] == 5 and roster[0].params["distance"].p == 1.0
    assert roster[1].params["l2"] == 0.01
    cfg.write_text("[x]\nk = 3\n")
    with pytest.raises(ValueError):
        load_roster_config(cfg)
