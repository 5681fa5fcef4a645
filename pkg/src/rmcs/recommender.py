"""Recommender-based multiple classifier system.

For every test object the classifiers to trust are read off the top of the
concept lattice of a *classification context*: a formal context whose
objects are training rows, whose attributes are base classifiers, and whose
crosses mark rows a classifier got right under cross-validation. The concept
whose extent overlaps most with the object's nearest training rows supplies
the classifiers; their predictions are combined by majority vote.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classifiers import ClassifierSpec, fit, majority_vote
from .data import Dataset, DistanceSpec, k_nearest
from .fca import FormalConcept, FormalContext, top_cbo

LEAVE_ONE_OUT = "loo"


def resolve_folds(n_folds: int | str, n_train: int) -> int:
    if n_folds == LEAVE_ONE_OUT:
        n_folds = n_train
    if not isinstance(n_folds, (int, np.integer)) or not 2 <= n_folds <= n_train:
        raise ValueError(f"n_folds must be in 2..{n_train} or {LEAVE_ONE_OUT!r}, got {n_folds!r}")
    return int(n_folds)


def fold_assignment(n: int, n_folds: int, seed: int) -> list[np.ndarray]:
    """Seeded shuffle of ``0..n-1`` cut into ``n_folds`` near-equal folds."""
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(f) for f in np.array_split(perm, n_folds)]


def build_classification_context(roster: Sequence[ClassifierSpec], train: Dataset,
                                 n_folds: int | str, seed: int) -> FormalContext:
    """Cross-validated correctness table of every classifier on every training row.

    Each classifier is fitted once per fold, on the other folds, and predicts
    the held-out fold.
    """
    if not roster:
        raise ValueError("empty classifier roster")
    n = train.n_objects
    folds = fold_assignment(n, resolve_folds(n_folds, n), seed)
    correct = np.zeros((n, len(roster)), dtype=bool)
    for held_out in folds:
        rest = np.setdiff1d(np.arange(n), held_out, assume_unique=True)
        fold_train = train.subset(rest)
        X_out = train.features[held_out]
        for j, spec in enumerate(roster):
            model = fit(spec, fold_train)
            correct[held_out, j] = model.predict_many(X_out) == train.labels[held_out]
    return FormalContext.from_matrix(
        correct,
        object_names=[str(i) for i in range(n)],
        attribute_names=[spec.name for spec in roster],
        name="classification context",
    )


def predict_table(roster: Sequence[ClassifierSpec], train: Dataset, test: Dataset | np.ndarray) -> np.ndarray:
    """``n_test x len(roster)`` matrix of class ids predicted by models fitted on all of ``train``."""
    X = test.features if isinstance(test, Dataset) else np.asarray(test, dtype=float)
    table = np.empty((len(X), len(roster)), dtype=np.int64)
    for j, spec in enumerate(roster):
        try:
            table[:, j] = fit(spec, train).predict_many(X)
        except Exception as exc:
            raise RuntimeError(f"classifier {j} ({spec.name}): {exc}") from exc
    return table


def select_classifiers(cc: FormalContext, neighbors: Iterable[int],
                       concepts: tuple[FormalConcept, list[FormalConcept]] | None = None) -> frozenset[int]:
    """Classifier indices recommended for an object with the given training neighbours.

    ``concepts`` may carry a precomputed ``top_cbo(cc)`` result.
    """
    if cc.n_objects == 0 or cc.n_attributes == 0:
        raise ValueError("empty classification context")
    neighbors = frozenset(neighbors)
    if not neighbors:
        raise ValueError("neighbour set must be non-empty")
    unknown = [g for g in neighbors if not 0 <= g < cc.n_objects]
    if unknown:
        raise ValueError(f"unknown training objects {sorted(unknown)}")
    top, lowers = concepts if concepts is not None else top_cbo(cc)
    if top.intent:
        return top.intent
    scores = [len(c.extent & neighbors) for c in lowers]
    best = max(scores, default=0)
    if best == 0:
        return frozenset(cc.attributes)
    return frozenset().union(*(c.intent for c, s in zip(lowers, scores) if s == best))


@dataclass
class RmcsConfig:
    roster: list[ClassifierSpec]
    k: int = 3
    n_folds: int | str = 4
    distance: DistanceSpec = field(default_factory=DistanceSpec)
    seed: int = 0

    def __post_init__(self):
        if not self.roster:
            raise ValueError("empty classifier roster")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError("k must be an integer >= 1")


@dataclass
class RmcsResult:
    predictions: np.ndarray
    selected: list[frozenset[int]]
    neighbors: list[list[int]]
    context: FormalContext
    table: np.ndarray
    top: FormalConcept
    lowers: list[FormalConcept]


def recommend(cc: FormalContext, table: np.ndarray, neighbor_sets: Sequence[Iterable[int]]):
    """Selection and voting for precomputed neighbour sets.

    Returns ``(predictions, selected)`` where ``selected[i]`` holds the
    classifier indices whose table entries were voted for object ``i``.
    """
    table = np.asarray(table, dtype=np.int64)
    if len(table) != len(neighbor_sets):
        raise ValueError("one neighbour set per prediction-table row is required")
    concepts = top_cbo(cc)
    preds = np.empty(len(table), dtype=np.int64)
    selected = []
    for i, nb in enumerate(neighbor_sets):
        chosen = select_classifiers(cc, nb, concepts)
        preds[i] = majority_vote(table[i, sorted(chosen)])
        selected.append(chosen)
    return preds, selected


def run_rmcs(config: RmcsConfig, train: Dataset, test: Dataset | np.ndarray) -> RmcsResult:
    X_test = test.features if isinstance(test, Dataset) else np.asarray(test, dtype=float)
    if X_test.ndim != 2 or X_test.shape[1] != train.n_features:
        raise ValueError(f"test rows must have {train.n_features} features")
    if config.k > train.n_objects:
        raise ValueError(f"k={config.k} exceeds the {train.n_objects} training objects")
    cc = build_classification_context(config.roster, train, config.n_folds, config.seed)
    table = predict_table(config.roster, train, X_test)
    neighbors = [k_nearest(train, x, config.k, config.distance) for x in X_test]
    preds, selected = recommend(cc, table, neighbors)
    top, lowers = top_cbo(cc)
    return RmcsResult(preds, selected, neighbors, cc, table, top, lowers)


def rmcs_classify(config: RmcsConfig, train: Dataset, test: Dataset | np.ndarray) -> np.ndarray:
    return run_rmcs(config, train, test).predictions


def plain_vote(table: np.ndarray) -> np.ndarray:
    """Unweighted majority vote across all classifiers of a prediction table."""
    return np.array([majority_vote(row) for row in np.asarray(table)], dtype=np.int64)
