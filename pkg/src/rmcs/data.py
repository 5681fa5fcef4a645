"""Datasets, CSV ingestion, train/test splitting and distances."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

BINARY = "binary"
NUMERIC = "numeric"


class DataError(Exception):
    """Base class for dataset loading and validation failures."""


class MissingFileError(DataError):
    pass


class EmptyDatasetError(DataError):
    pass


class RaggedRowError(DataError):
    pass


class NonNumericValueError(DataError):
    pass


class LabelColumnError(DataError):
    pass


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    label_names: tuple[str, ...]
    feature_kind: tuple[str, ...]

    def __post_init__(self):
        X = np.asarray(self.features, dtype=float)
        if X.ndim == 1 and X.size == 0:
            X = X.reshape(0, len(self.feature_names))
        if X.ndim != 2:
            raise DataError("features must be a 2-D matrix")
        y = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if len(y) != X.shape[0]:
            raise DataError(f"{X.shape[0]} feature rows but {len(y)} labels")
        if len(self.feature_names) != X.shape[1] or len(self.feature_kind) != X.shape[1]:
            raise DataError("feature_names / feature_kind must have one entry per column")
        if len(y) and (y.min() < 0 or y.max() >= len(self.label_names)):
            raise DataError("labels must index into label_names")
        for j, kind in enumerate(self.feature_kind):
            if kind not in (BINARY, NUMERIC):
                raise DataError(f"unknown feature kind {kind!r}")
            if kind == BINARY and not np.isin(X[:, j], (0.0, 1.0)).all():
                raise DataError(f"feature {self.feature_names[j]!r} is flagged binary but has other values")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "label_names", tuple(self.label_names))
        object.__setattr__(self, "feature_kind", tuple(self.feature_kind))

    @classmethod
    def from_arrays(cls, X, y, label_names: Sequence[str] | None = None,
                    feature_names: Sequence[str] | None = None) -> "Dataset":
        """Wrap raw arrays, inferring feature kinds and default names."""
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim == 1:
            X = X.reshape(len(y), -1)
        if label_names is None:
            n_classes = int(y.max()) + 1 if len(y) else 0
            label_names = [str(c) for c in range(n_classes)]
        if feature_names is None:
            feature_names = [f"f{j}" for j in range(X.shape[1])]
        kinds = [BINARY if np.isin(X[:, j], (0.0, 1.0)).all() else NUMERIC
                 for j in range(X.shape[1])]
        return cls(X, y, tuple(feature_names), tuple(label_names), tuple(kinds))

    @property
    def n_objects(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.label_names)

    def __len__(self) -> int:
        return self.n_objects

    def subset(self, indices) -> "Dataset":
        """Rows at ``indices``; the label universe is kept as is."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[idx], self.labels[idx], self.feature_names,
                       self.label_names, self.feature_kind)


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def _sort_values(values):
    if all(_is_number(v) for v in values):
        return sorted(values, key=lambda v: (float(v), v))
    return sorted(values)


def load_csv(path, label_column: str | int = -1, has_header: bool = True) -> Dataset:
    """Read a comma-separated file into a :class:`Dataset`.

    ``label_column`` is a header name or a (possibly negative) column index.
    Columns whose values all parse as numbers stay numeric; columns with no
    numeric values are treated as categorical and one-hot encoded into
    ``name=value`` binary features. Class ids follow the sorted label values.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"{path}: no such file")
    with path.open(newline="") as fh:
        rows = [[c.strip() for c in r] for r in csv.reader(fh) if any(c.strip() for c in r)]
    if has_header:
        if not rows:
            raise EmptyDatasetError(f"{path}: file is empty")
        header, rows = rows[0], rows[1:]
    else:
        header = None
    if not rows:
        raise EmptyDatasetError(f"{path}: no data rows")
    width = len(header) if header is not None else len(rows[0])
    first_data_line = 2 if has_header else 1
    for i, r in enumerate(rows):
        if len(r) != width:
            raise RaggedRowError(f"{path}: row {i + first_data_line} has {len(r)} fields, expected {width}")
    if header is None:
        header = [f"c{j}" for j in range(width)]

    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if label_column not in header:
            raise LabelColumnError(f"{path}: no column named {label_column!r}")
        label_idx = header.index(label_column)
    else:
        label_idx = int(label_column)
        if not -width <= label_idx < width:
            raise LabelColumnError(f"{path}: label column index {label_idx} out of range")
        label_idx %= width

    raw_labels = [r[label_idx] for r in rows]
    label_names = _sort_values(set(raw_labels))
    label_id = {v: i for i, v in enumerate(label_names)}

    columns, names, kinds = [], [], []
    for j in range(width):
        if j == label_idx:
            continue
        values = [r[j] for r in rows]
        numeric = [_is_number(v) for v in values]
        if all(numeric):
            col = np.array([float(v) for v in values])
            columns.append(col)
            names.append(header[j])
            kinds.append(BINARY if np.isin(col, (0.0, 1.0)).all() else NUMERIC)
        elif any(numeric):
            bad = numeric.index(False)
            raise NonNumericValueError(
                f"{path}: row {bad + first_data_line}, column {header[j]!r}: "
                f"non-numeric value {values[bad]!r} in a numeric column")
        else:
            for level in _sort_values(set(values)):
                columns.append(np.array([1.0 if v == level else 0.0 for v in values]))
                names.append(f"{header[j]}={level}")
                kinds.append(BINARY)

    X = np.column_stack(columns) if columns else np.zeros((len(rows), 0))
    y = np.array([label_id[v] for v in raw_labels], dtype=np.int64)
    return Dataset(X, y, tuple(names), tuple(label_names), tuple(kinds))


def split(ds: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded shuffle split; each side keeps the original row order."""
    if ds.n_objects < 2:
        raise DataError("need at least 2 objects to split")
    if not 0.0 < train_fraction < 1.0:
        raise DataError("train_fraction must lie strictly between 0 and 1")
    n = ds.n_objects
    n_train = int(math.floor(train_fraction * n + 0.5))
    if n_train == 0 or n_train == n:
        raise DataError(f"train_fraction {train_fraction} leaves one side of the split empty for n={n}")
    perm = np.random.default_rng(seed).permutation(n)
    return ds.subset(np.sort(perm[:n_train])), ds.subset(np.sort(perm[n_train:]))


def minmax_normalize(train: Dataset, *others: Dataset) -> list[Dataset]:
    """Scale numeric features to [0, 1] using the ranges seen in ``train``."""
    X = train.features
    numeric = np.array([k == NUMERIC for k in train.feature_kind], dtype=bool)
    lo = X.min(axis=0) if len(X) else np.zeros(X.shape[1])
    span = (X.max(axis=0) - lo) if len(X) else np.ones(X.shape[1])
    span = np.where(span > 0, span, 1.0)

    def scale(ds: Dataset) -> Dataset:
        Z = ds.features.copy()
        Z[:, numeric] = (Z[:, numeric] - lo[numeric]) / span[numeric]
        return Dataset(Z, ds.labels, ds.feature_names, ds.label_names, ds.feature_kind)

    return [scale(d) for d in (train, *others)]


@dataclass(frozen=True)
class DistanceSpec:
    kind: str = "euclidean"
    p: float = 2.0

    def __post_init__(self):
        if self.kind not in ("hamming", "euclidean", "minkowski"):
            raise ValueError(f"unknown distance {self.kind!r}")
        if self.kind == "minkowski" and not self.p >= 1:
            raise ValueError("minkowski order p must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "DistanceSpec":
        """Parse ``hamming``, ``euclidean`` or ``minkowski:P``."""
        kind, _, p = text.strip().partition(":")
        if kind == "minkowski":
            if not p:
                raise ValueError("minkowski needs an order, e.g. minkowski:1")
            return cls("minkowski", float(p))
        if p:
            raise ValueError(f"{kind} takes no parameter")
        return cls(kind)

    def __str__(self) -> str:
        return f"minkowski:{self.p:g}" if self.kind == "minkowski" else self.kind


def distances_to(X: np.ndarray, q: np.ndarray, spec: DistanceSpec) -> np.ndarray:
    """Distance from every row of ``X`` to the query row ``q``."""
    X = np.asarray(X, dtype=float)
    q = np.asarray(q, dtype=float)
    if X.shape[1] != q.shape[-1]:
        raise ValueError(f"arity mismatch: rows have {X.shape[1]} features, query has {q.shape[-1]}")
    if spec.kind == "hamming":
        return (X != q).sum(axis=1).astype(float)
    diff = np.abs(X - q)
    if spec.kind == "euclidean":
        return np.sqrt((diff * diff).sum(axis=1))
    if spec.p == 1:
        return diff.sum(axis=1)
    return (diff ** spec.p).sum(axis=1) ** (1.0 / spec.p)


def distance(a, b, spec: DistanceSpec) -> float:
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise ValueError(f"arity mismatch: {a.size} vs {b.size}")
    return float(distances_to(a[None, :], b, spec)[0])


def k_nearest(train: Dataset | np.ndarray, query, k: int, spec: DistanceSpec) -> list[int]:
    """Ids of the ``k`` training rows closest to ``query``.

    Sorted by (distance, id), so equal distances resolve to the lower id.
    """
    X = train.features if isinstance(train, Dataset) else np.asarray(train, dtype=float)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    d = distances_to(X, np.asarray(query, dtype=float).reshape(-1), spec)
    order = np.argsort(d, kind="stable")
    return [int(i) for i in order[:k]]


def make_prototype_data(n_objects: int, n_classes: int = 3, n_features: int = 16,
                        noise: float = 0.2, seed: int = 0) -> Dataset:
    """Synthetic binary data: each class has a random 0/1 prototype and every
    object copies its class prototype with each bit flipped with probability
    ``noise``. Labels are drawn uniformly."""
    rng = np.random.default_rng(seed)
    protos = rng.integers(0, 2, size=(n_classes, n_features))
    y = rng.integers(0, n_classes, size=n_objects)
    X = protos[y]
    flip = rng.random(X.shape) < noise
    X = np.where(flip, 1 - X, X)
    return Dataset(X, y, tuple(f"b{j}" for j in range(n_features)),
                   tuple(str(c) for c in range(n_classes)), (BINARY,) * n_features)
