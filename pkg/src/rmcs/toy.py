"""The ten-object toy problem and its hand-made classification context.

Objects are named 1..10 for display; internally they are 0-based row ids.
Objects 9 and 10 are unlabeled test objects.
"""
from __future__ import annotations

import numpy as np

from .data import Dataset
from .fca import FormalContext

FEATURES = np.array([
    [1, 1, 0, 1],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 0, 1, 1],
    [1, 1, 1, 0],
    [0, 1, 1, 1],
    [1, 1, 1, 0],
    [0, 0, 1, 1],
    [1, 1, 1, 1],
    [0, 1, 0, 1],
], dtype=float)
TRAIN_LABELS = np.array([1, 1, 0, 1, 1, 0, 1, 0])
FEATURE_NAMES = ("m1", "m2", "m3", "m4")
CLASSIFIER_NAMES = ("cl1", "cl2", "cl3", "cl4")

# leave-one-out correctness of four classifiers on objects 1..8
CONTEXT_ROWS = (
    "X.XX",
    ".XX.",
    "X..X",
    ".XX.",
    "XX..",
    "XX.X",
    ".X.X",
    ".XXX",
)

# three nearest training objects of test objects 9 and 10, as published;
# several Hamming-distance ties make other choices equally valid
NEIGHBORS = {9: (4, 5, 7), 10: (1, 6, 8)}

GOLDEN = """\
classification context: 8 objects x 4 classifiers
top concept: ({1,2,3,4,5,6,7,8}, {})
lower neighbors:
  ({2,4,5,6,7,8}, {cl2})
  ({1,3,6,7,8}, {cl4})
  ({1,3,5,6}, {cl1})
  ({1,2,4,8}, {cl3})
recommendations:
  object  neighbors  best concept               recommended
  9       {4,5,7}    ({2,4,5,6,7,8}, {cl2})     cl2
  10      {1,6,8}    ({1,3,6,7,8}, {cl4})       cl4
"""


def train_dataset() -> Dataset:
    return Dataset(FEATURES[:8], TRAIN_LABELS, FEATURE_NAMES, ("0", "1"), ("binary",) * 4)


def test_features() -> np.ndarray:
    return FEATURES[8:].copy()


def classification_context() -> FormalContext:
    matrix = [[c == "X" for c in row] for row in CONTEXT_ROWS]
    return FormalContext.from_matrix(matrix, [str(i) for i in range(1, 9)],
                                     CLASSIFIER_NAMES, "toy classification context")


def csv_text() -> str:
    """Training objects 1..8 as CSV with a header and a trailing ``label`` column."""
    lines = [",".join(FEATURE_NAMES + ("label",))]
    for row, label in zip(FEATURES[:8].astype(int), TRAIN_LABELS):
        lines.append(",".join(str(v) for v in row) + f",{label}")
    return "\n".join(lines) + "\n"
