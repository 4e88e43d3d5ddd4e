"""Dense containers, label encodings and p-norm distance primitives."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class NormExponent(enum.Enum):
    P1 = "1"
    P2 = "2"
    PInf = "inf"

    @classmethod
    def parse(cls, value) -> "NormExponent":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ("1", "1.0", "p1"):
            return cls.P1
        if text in ("2", "2.0", "p2"):
            return cls.P2
        if text in ("inf", "infinity", "pinf", "oo"):
            return cls.PInf
        raise ValueError(f"unsupported norm exponent {value!r}; expected 1, 2 or inf")

    def __str__(self) -> str:
        return self.value


def as_vector(x, name: str = "vector") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_matrix(X, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix ``X`` (m x d) with integer labels ``y`` (length m).

    Binary labels are {-1, +1}; multi-class labels are {1..M}. Arrays are
    copied and made read-only on construction.
    """

    X: np.ndarray
    y: np.ndarray
    name: str = ""

    def __post_init__(self):
        X = as_matrix(self.X, "features")
        y = np.asarray(self.y)
        if y.ndim != 1:
            raise ValueError("labels must be 1-d")
        if y.size and not np.all(np.equal(np.mod(y, 1), 0)):
            raise ValueError("labels must be integers")
        y = y.astype(np.int64)
        if X.shape[0] != y.shape[0]:
            raise ValueError(f"features have {X.shape[0]} rows but labels have length {y.shape[0]}")
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "y", _frozen(y))

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def classes(self) -> np.ndarray:
        return np.unique(self.y)

    @property
    def is_binary(self) -> bool:
        return set(np.unique(self.y).tolist()) <= {-1, 1}

    def subset(self, idx) -> "Dataset":
        idx = np.asarray(idx)
        return Dataset(self.X[idx], self.y[idx], self.name)

    def with_features(self, X) -> "Dataset":
        return Dataset(X, self.y, self.name)


def require_binary(data: Dataset) -> None:
    labels = set(np.unique(data.y).tolist())
    if not labels <= {-1, 1}:
        raise ValueError(f"binary labels {{-1, +1}} required, got {sorted(labels)}")
    if len(labels) < 2:
        raise ValueError("both classes must be present")


def encode_labels(raw) -> np.ndarray:
    """Map raw label values to {-1, +1} (two values) or {1..M} by ascending order."""
    raw = np.asarray(raw, dtype=np.float64)
    values = np.unique(raw)
    if values.size == 0:
        raise ValueError("no labels")
    codes = np.searchsorted(values, raw)
    if values.size == 2:
        return np.where(codes == 0, -1, 1).astype(np.int64)
    return (codes + 1).astype(np.int64)


def p_distances(X, a, p) -> np.ndarray:
    """Row-wise ``||x - a||_p^p`` (``max |x - a|`` for p = inf)."""
    p = NormExponent.parse(p)
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    a = np.asarray(a, dtype=np.float64)
    if X.shape[1] != a.shape[-1]:
        raise ValueError(f"dimension mismatch: x has length {X.shape[1]}, a has length {a.shape[-1]}")
    diff = np.abs(X - a)
    if p is NormExponent.P1:
        return diff.sum(axis=1)
    if p is NormExponent.P2:
        return (diff * diff).sum(axis=1)
    return diff.max(axis=1)


def p_distance(x, a, p) -> float:
    x = as_vector(x, "x")
    a = as_vector(a, "a")
    if x.shape != a.shape:
        raise ValueError(f"dimension mismatch: x has length {x.size}, a has length {a.size}")
    return float(p_distances(x[None, :], a, p)[0])


def pairwise_p_distances(X, A, p, block_rows: int = 256) -> np.ndarray:
    """Distance matrix (n x k) between rows of X and rows of A, from exact differences."""
    p = NormExponent.parse(p)
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    if X.shape[1] != A.shape[1]:
        raise ValueError(f"dimension mismatch: x has length {X.shape[1]}, anchors have length {A.shape[1]}")
    n, k = X.shape[0], A.shape[0]
    out = np.empty((n, k))
    # keep each (rows, k, d) temporary around 32 MB
    step = max(1, min(block_rows, (4_000_000 // max(1, k * X.shape[1]))))
    for start in range(0, n, step):
        diff = np.abs(X[start:start + step, None, :] - A[None, :, :])
        if p is NormExponent.P1:
            out[start:start + step] = diff.sum(axis=2)
        elif p is NormExponent.P2:
            out[start:start + step] = (diff * diff).sum(axis=2)
        else:
            out[start:start + step] = diff.max(axis=2)
    return out


def nearest_anchors(X, anchors, p) -> tuple[np.ndarray, np.ndarray]:
    """Index of the closest anchor for every row of X and the distance to it.

    Ties go to the lowest anchor index.
    """
    A = np.atleast_2d(np.asarray(anchors, dtype=np.float64))
    if A.shape[0] == 0 or A.size == 0:
        raise ValueError("anchor set is empty")
    D = pairwise_p_distances(X, A, p)
    idx = np.argmin(D, axis=1)
    return idx, D[np.arange(D.shape[0]), idx]


def nearest_anchor(x, anchors, p) -> int:
    x = as_vector(x, "x")
    if len(anchors) == 0:
        raise ValueError("anchor set is empty")
    A = as_matrix(anchors, "anchors")
    if A.shape[1] != x.size:
        raise ValueError(f"dimension mismatch: x has length {x.size}, anchors have length {A.shape[1]}")
    return int(nearest_anchors(x[None, :], A, p)[0][0])
