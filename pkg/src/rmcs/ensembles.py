"""Bagging and AdaBoost baselines.

Randomness comes from numpy's ``default_rng`` (PCG64). Each bagging member
draws its bootstrap sample from its own generator, seeded with a child of
``SeedSequence(seed)``, so member ``i`` sees the same sample whether members
are fitted sequentially or in parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classifiers import ClassifierSpec, NotFittedError, TrainedModel, fit, majority_vote
from .data import Dataset

# alpha given to a round with zero weighted error
ALPHA_CAP = math.log(1e10) / 2


class MemberFitError(RuntimeError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"bagging member {index}: {cause}")
        self.index = index


def bootstrap_indices(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` row indices drawn uniformly with replacement."""
    return rng.integers(0, n, size=n)


@dataclass
class BaggingModel:
    base_spec: ClassifierSpec
    n_estimators: int
    seed: int
    members: list[TrainedModel] = field(default_factory=list)
    samples: list[np.ndarray] = field(default_factory=list, repr=False)

    @property
    def fitted(self) -> bool:
        return len(self.members) == self.n_estimators

    def member_predictions(self, X) -> np.ndarray:
        if not self.fitted:
            raise NotFittedError("bagging model is not fitted")
        return np.column_stack([m.predict_many(X) for m in self.members])

    def predict_many(self, X) -> np.ndarray:
        votes = self.member_predictions(np.asarray(X, dtype=float))
        return np.array([majority_vote(row) for row in votes], dtype=np.int64)

    def predict(self, x) -> int:
        return int(self.predict_many(np.asarray(x, dtype=float).reshape(1, -1))[0])


def bagging_fit(base_spec: ClassifierSpec, train: Dataset, n_estimators: int, seed: int) -> BaggingModel:
    if train.n_objects == 0:
        raise ValueError("bagging needs a non-empty training set")
    if n_estimators < 1:
        raise ValueError("n_estimators must be >= 1")
    model = BaggingModel(base_spec, n_estimators, seed)
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(n_estimators)):
        idx = bootstrap_indices(train.n_objects, np.random.default_rng(child))
        try:
            member = fit(base_spec, train.subset(idx))
        except Exception as exc:
            raise MemberFitError(i, exc) from exc
        model.samples.append(idx)
        model.members.append(member)
    return model


def bagging_predict(model: BaggingModel, x) -> int:
    return model.predict(x)


@dataclass
class AdaBoostModel:
    """Weighted vote of decision stumps (AdaBoost.M1 for more than two classes).

    ``errors`` and ``weight_history`` record, for every accepted round, the
    weighted error and the instance distribution the stump was fitted on.
    """

    n_rounds: int
    n_classes: int = 0
    members: list[tuple[TrainedModel, float]] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)
    weight_history: list[np.ndarray] = field(default_factory=list, repr=False)
    weights: np.ndarray | None = field(default=None, repr=False)
    stop_reason: str = ""

    @property
    def fitted(self) -> bool:
        return bool(self.members)

    def scores(self, X, upto: int | None = None) -> np.ndarray:
        if not self.fitted:
            raise NotFittedError("AdaBoost model is not fitted")
        X = np.asarray(X, dtype=float)
        S = np.zeros((len(X), self.n_classes))
        rows = np.arange(len(X))
        for model, alpha in self.members[:upto]:
            S[rows, model.predict_many(X)] += alpha
        return S

    def predict_many(self, X, upto: int | None = None) -> np.ndarray:
        return np.argmax(self.scores(X, upto), axis=1).astype(np.int64)

    def predict(self, x) -> int:
        return int(self.predict_many(np.asarray(x, dtype=float).reshape(1, -1))[0])


def adaboost_fit(train: Dataset, n_rounds: int) -> AdaBoostModel:
    """Boost weighted decision stumps for up to ``n_rounds`` rounds.

    Training stops early when a stump is perfect on the weighted sample (it is
    kept with alpha ``ALPHA_CAP``) or when its weighted error reaches 0.5 (the
    round is discarded).
    """
    if n_rounds < 1:
        raise ValueError("n_rounds must be >= 1")
    if train.n_objects == 0:
        raise ValueError("AdaBoost needs a non-empty training set")
    stump = ClassifierSpec("decision_stump")
    model = AdaBoostModel(n_rounds, train.n_classes)
    n = train.n_objects
    y = train.labels
    w = np.full(n, 1.0 / n)

    if len(np.unique(y)) == 1:
        model.members.append((fit(stump, train), ALPHA_CAP))
        model.errors.append(0.0)
        model.weight_history.append(w.copy())
        model.stop_reason = "single class"
        model.weights = w
        return model

    for _ in range(n_rounds):
        member = fit(stump, train, weights=w)
        wrong = member.predict_many(train.features) != y
        eps = float(w[wrong].sum())
        if eps <= 0.0:
            model.members.append((member, ALPHA_CAP))
            model.errors.append(0.0)
            model.weight_history.append(w.copy())
            model.stop_reason = "zero error"
            break
        if eps >= 0.5:
            model.stop_reason = "error >= 0.5"
            break
        alpha = 0.5 * math.log((1.0 - eps) / eps)
        model.members.append((member, alpha))
        model.errors.append(eps)
        model.weight_history.append(w.copy())
        w = w * np.where(wrong, math.exp(alpha), math.exp(-alpha))
        w /= w.sum()
    else:
        model.stop_reason = "round limit"
    if not model.members:
        # first stump already no better than chance; keep it as a plain
        # classifier, it is not an accepted boosting round
        model.members.append((fit(stump, train, weights=w), 1.0))
        model.stop_reason = "first round error >= 0.5"
    model.weights = w
    return model


def adaboost_predict(model: AdaBoostModel, x) -> int:
    return model.predict(x)
