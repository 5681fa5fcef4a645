"""Base learners behind a common fit / predict contract.

Four kinds are available: ``knn``, ``logistic_regression``, ``decision_stump``
and ``naive_bayes``. Only the stump and naive Bayes accept instance weights;
the other two raise :class:`UnsupportedWeightsError` if given any.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .data import BINARY, Dataset, DistanceSpec, distances_to

DEFAULTS: dict[str, dict[str, Any]] = {
    "knn": {"k": 3, "distance": DistanceSpec("euclidean")},
    "logistic_regression": {"l2": 1e-3, "learning_rate": 0.5, "max_epochs": 300},
    "decision_stump": {},
    "naive_bayes": {"alpha": 1.0},
}
KINDS = tuple(DEFAULTS)


class UnsupportedWeightsError(ValueError):
    pass


class NotFittedError(RuntimeError):
    pass


def majority_vote(labels: Sequence[int], weights: Sequence[float] | None = None) -> int:
    """Most voted class id; ties go to the lowest id."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0:
        raise ValueError("cannot vote over an empty label list")
    scores = np.bincount(labels, weights=weights)
    return int(np.argmax(scores))


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    params: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.kind not in DEFAULTS:
            raise ValueError(f"unknown classifier kind {self.kind!r}; choose from {', '.join(KINDS)}")
        unknown = set(self.params) - set(DEFAULTS[self.kind])
        if unknown:
            raise ValueError(f"{self.kind}: unknown hyperparameters {sorted(unknown)}")
        merged = {**DEFAULTS[self.kind], **self.params}
        if isinstance(merged.get("distance"), str):
            merged["distance"] = DistanceSpec.parse(merged["distance"])
        object.__setattr__(self, "params", merged)
        if not self.name:
            object.__setattr__(self, "name", self.kind)
        self._validate()

    def _validate(self):
        p = self.params
        if self.kind == "knn" and not (isinstance(p["k"], int) and p["k"] >= 1):
            raise ValueError("knn: k must be an integer >= 1")
        if self.kind == "naive_bayes" and not p["alpha"] > 0:
            raise ValueError("naive_bayes: alpha must be > 0")
        if self.kind == "logistic_regression":
            if not (isinstance(p["max_epochs"], int) and p["max_epochs"] >= 1):
                raise ValueError("logistic_regression: max_epochs must be an integer >= 1")
            if not p["learning_rate"] > 0 or p["l2"] < 0:
                raise ValueError("logistic_regression: learning_rate must be > 0 and l2 >= 0")

    def describe(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})" if args else self.name


class TrainedModel:
    """Fitted state of one base learner. Subclasses implement ``_predict_rows``."""

    def __init__(self, spec: ClassifierSpec, n_classes: int, n_features: int):
        self.spec = spec
        self.n_classes = n_classes
        self.n_features = n_features

    def predict(self, x) -> int:
        return int(self.predict_many(np.asarray(x, dtype=float).reshape(1, -1))[0])

    def predict_many(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"{self.spec.name}: expected rows of {self.n_features} features, got shape {X.shape}")
        return self._predict_rows(X)

    def _predict_rows(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class ConstantModel(TrainedModel):
    def __init__(self, spec, n_classes, n_features, label: int):
        super().__init__(spec, n_classes, n_features)
        self.label = label

    def _predict_rows(self, X):
        return np.full(len(X), self.label, dtype=np.int64)


class KNNModel(TrainedModel):
    def __init__(self, spec, train: Dataset):
        super().__init__(spec, train.n_classes, train.n_features)
        self.X = train.features
        self.y = train.labels
        # a fold may hold fewer rows than k
        self.k = min(spec.params["k"], len(self.y))

    def _predict_rows(self, X):
        dist = self.spec.params["distance"]
        out = np.empty(len(X), dtype=np.int64)
        for i, q in enumerate(X):
            nearest = np.argsort(distances_to(self.X, q, dist), kind="stable")[:self.k]
            out[i] = majority_vote(self.y[nearest])
        return out


class LogisticRegressionModel(TrainedModel):
    """One-vs-rest logistic regression trained by full-batch gradient descent.

    Features are standardized with training statistics; weights start at zero,
    so fitting is deterministic.
    """

    def __init__(self, spec, train: Dataset):
        super().__init__(spec, train.n_classes, train.n_features)
        p = spec.params
        X = train.features
        self.mean = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale = np.where(std > 0, std, 1.0)
        Z = np.hstack([(X - self.mean) / self.scale, np.ones((len(X), 1))])
        Y = (train.labels[:, None] == np.arange(self.n_classes)[None, :]).astype(float)
        W = np.zeros((Z.shape[1], self.n_classes))
        reg = np.ones(Z.shape[1])
        reg[-1] = 0.0  # bias is not penalized
        n = len(Z)
        for _ in range(p["max_epochs"]):
            P = _sigmoid(Z @ W)
            grad = Z.T @ (P - Y) / n + p["l2"] * reg[:, None] * W
            W -= p["learning_rate"] * grad
        self.W = W

    def decision_function(self, X):
        Z = np.hstack([(X - self.mean) / self.scale, np.ones((len(X), 1))])
        return Z @ self.W

    def _predict_rows(self, X):
        return np.argmax(self.decision_function(X), axis=1).astype(np.int64)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


class NaiveBayesModel(TrainedModel):
    """Bernoulli likelihoods for binary features, Gaussian for numeric ones.

    ``alpha`` is additive smoothing on class and Bernoulli counts. Instance
    weights rescale the counts so that they still sum to the number of rows.
    """

    def __init__(self, spec, train: Dataset, weights=None):
        super().__init__(spec, train.n_classes, train.n_features)
        alpha = spec.params["alpha"]
        X, y = train.features, train.labels
        n = len(y)
        w = np.ones(n) if weights is None else np.asarray(weights) * n
        C = self.n_classes
        onehot = (y[:, None] == np.arange(C)[None, :]) * w[:, None]
        counts = onehot.sum(axis=0)
        self.log_prior = np.log((counts + alpha) / (counts.sum() + C * alpha))
        self.binary = np.array([k == BINARY for k in train.feature_kind], dtype=bool)
        Xb, Xn = X[:, self.binary], X[:, ~self.binary]
        ones = onehot.T @ Xb
        theta = (ones + alpha) / (counts[:, None] + 2 * alpha)
        self.log_theta = np.log(theta)
        self.log_1m_theta = np.log1p(-theta)
        safe = np.where(counts > 0, counts, 1.0)[:, None]
        self.mu = (onehot.T @ Xn) / safe
        var = (onehot.T @ (Xn ** 2)) / safe - self.mu ** 2
        floor = 1e-9 * max(float(Xn.var(axis=0).max()) if Xn.size else 0.0, 1.0)
        self.var = np.maximum(var, 0.0) + floor

    def joint_log_likelihood(self, X):
        Xb, Xn = X[:, self.binary], X[:, ~self.binary]
        jll = self.log_prior[None, :] + Xb @ self.log_theta.T + (1 - Xb) @ self.log_1m_theta.T
        if Xn.shape[1]:
            jll = jll - 0.5 * np.log(2 * np.pi * self.var).sum(axis=1)[None, :]
            jll = jll - 0.5 * (((Xn[:, None, :] - self.mu[None]) ** 2) / self.var[None]).sum(axis=2)
        return jll

    def _predict_rows(self, X):
        return np.argmax(self.joint_log_likelihood(X), axis=1).astype(np.int64)


class StumpModel(TrainedModel):
    """One threshold test: ``x[feature] <= threshold`` picks ``left_class``.

    Each side predicts its weighted-majority class, which for two classes is
    the same as searching over the test's polarity.
    """

    def __init__(self, spec, train: Dataset, weights=None):
        super().__init__(spec, train.n_classes, train.n_features)
        n = len(train.labels)
        w = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
        self.feature, self.threshold, self.left_class, self.right_class, self.error = \
            _best_stump(train.features, train.labels, w, self.n_classes)

    def _predict_rows(self, X):
        if self.feature < 0:
            return np.full(len(X), self.left_class, dtype=np.int64)
        return np.where(X[:, self.feature] <= self.threshold,
                        self.left_class, self.right_class).astype(np.int64)


def _best_stump(X, y, w, n_classes):
    """Exhaustive weighted search over features and midpoint thresholds.

    Returns ``(feature, threshold, left, right, weighted_error)``; feature -1
    means no split beats predicting the overall majority.
    """
    onehot = (y[:, None] == np.arange(n_classes)[None, :]) * w[:, None]
    total = onehot.sum(axis=0)
    majority = int(np.argmax(total))
    best = (-1, 0.0, majority, majority, float(w.sum() - total[majority]))
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        cut = np.nonzero(xs[:-1] < xs[1:])[0]
        if cut.size == 0:
            continue
        left = np.cumsum(onehot[order], axis=0)[cut]
        right = total[None, :] - left
        lc = np.argmax(left, axis=1)
        rc = np.argmax(right, axis=1)
        # an empty-weight side keeps the overall majority
        lc = np.where(left.sum(axis=1) > 0, lc, majority)
        rc = np.where(right.sum(axis=1) > 0, rc, majority)
        rows = np.arange(len(cut))
        err = (left.sum(axis=1) - left[rows, lc]) + (right.sum(axis=1) - right[rows, rc])
        i = int(np.argmin(err))
        if err[i] < best[4] - 1e-12:
            thr = 0.5 * (xs[cut[i]] + xs[cut[i] + 1])
            best = (j, float(thr), int(lc[i]), int(rc[i]), float(err[i]))
    return best


def _check_weights(weights, n):
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size != n:
        raise ValueError(f"expected {n} weights, got {w.size}")
    if (w < 0).any() or not np.isfinite(w).all():
        raise ValueError("weights must be finite and non-negative")
    if abs(w.sum() - 1.0) > 1e-6:
        raise ValueError(f"weights must sum to 1, got {w.sum()}")
    return w


def fit(spec: ClassifierSpec, train: Dataset, weights=None) -> TrainedModel:
    """Fit ``spec`` on ``train``.

    A training set containing a single class yields a model that always
    predicts it.
    """
    if train.n_objects == 0:
        raise ValueError(f"{spec.name}: empty training set")
    if weights is not None:
        if spec.kind not in ("decision_stump", "naive_bayes"):
            raise UnsupportedWeightsError(f"{spec.kind} does not support instance weights")
        weights = _check_weights(weights, train.n_objects)
    present = np.unique(train.labels)
    if len(present) == 1:
        return ConstantModel(spec, train.n_classes, train.n_features, int(present[0]))
    if spec.kind == "knn":
        return KNNModel(spec, train)
    if spec.kind == "logistic_regression":
        return LogisticRegressionModel(spec, train)
    if spec.kind == "naive_bayes":
        return NaiveBayesModel(spec, train, weights)
    return StumpModel(spec, train, weights)


def predict(model: TrainedModel, x) -> int:
    return model.predict(x)


def parse_roster(text: str) -> list[ClassifierSpec]:
    """Comma list of kind names, e.g. ``knn,logistic_regression,naive_bayes``.

    Repeated kinds get numbered names so every roster entry stays distinct.
    """
    kinds = [t.strip() for t in text.split(",") if t.strip()]
    if not kinds:
        raise ValueError("empty classifier list")
    seen: dict[str, int] = {}
    roster = []
    for kind in kinds:
        seen[kind] = seen.get(kind, 0) + 1
        name = kind if kinds.count(kind) == 1 else f"{kind}#{seen[kind]}"
        roster.append(ClassifierSpec(kind, name=name))
    return roster


def _coerce(value: str):
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


def load_roster_config(path) -> list[ClassifierSpec]:
    """Read a roster from an INI-style file, one section per classifier::

        [near]
        kind = knn
        k = 5
        distance = minkowski:1

    The section name becomes the classifier's name; section order is kept.
    """
    import configparser

    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise FileNotFoundError(path)
    roster = []
    for section in parser.sections():
        items = dict(parser.items(section))
        if "kind" not in items:
            raise ValueError(f"{path}: section [{section}] has no 'kind'")
        kind = items.pop("kind")
        roster.append(ClassifierSpec(kind, {k: _coerce(v) for k, v in items.items()}, name=section))
    if not roster:
        raise ValueError(f"{path}: no classifier sections")
    return roster
