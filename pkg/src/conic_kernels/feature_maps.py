"""Explicit low-dimensional conic feature maps.

Every map keeps the original features as the leading ``d`` columns and
appends distance features measured from anchor points:

* ``SingleDistance``  -> one column, distance to the nearest anchor of a set
* ``Coordinatewise``  -> ``d`` columns, ``|x_l - a_l|^p`` per coordinate
* ``TwoAnchor``       -> two columns, one per anchor set
* ``MultiAnchor``     -> one column per anchor set (M >= 2)

Anchors are resolved per sample with :func:`conic_kernels.core.nearest_anchors`
using the same exponent as the map.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import Dataset, NormExponent, as_matrix, as_vector, nearest_anchors


def _anchor_set(anchors, name="anchor set") -> np.ndarray:
    A = np.asarray(anchors, dtype=np.float64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.size == 0:
        raise ValueError(f"{name} is empty")
    A = as_matrix(A, name)
    A.setflags(write=False)
    return A


class FeatureMapSpec:
    """Base class; subclasses implement ``_appended`` over a matrix."""

    p: NormExponent

    def output_dim(self, d: int) -> int:
        raise NotImplementedError

    def input_dim(self) -> int | None:
        return None

    def _appended(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def transform(self, X) -> np.ndarray:
        X = as_matrix(X, "features")
        d = self.input_dim()
        if d is not None and X.shape[1] != d:
            raise ValueError(f"dimension mismatch: map expects {d} features, got {X.shape[1]}")
        extra = self._appended(X)
        if extra is None:
            return X.copy()
        return np.hstack([X, extra])


@dataclass(frozen=True, eq=False)
class Identity(FeatureMapSpec):
    def output_dim(self, d: int) -> int:
        return d

    def _appended(self, X):
        return None


@dataclass(frozen=True, eq=False)
class SingleDistance(FeatureMapSpec):
    p: NormExponent
    anchors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", NormExponent.parse(self.p))
        object.__setattr__(self, "anchors", _anchor_set(self.anchors))

    def input_dim(self):
        return self.anchors.shape[1]

    def output_dim(self, d: int) -> int:
        return d + 1

    def _appended(self, X):
        return nearest_anchors(X, self.anchors, self.p)[1][:, None]


@dataclass(frozen=True, eq=False)
class Coordinatewise(FeatureMapSpec):
    p: NormExponent
    anchor: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", NormExponent.parse(self.p))
        a = np.asarray(self.anchor, dtype=np.float64)
        if a.ndim == 2:
            if a.shape[0] != 1:
                raise ValueError("coordinatewise map takes exactly one anchor")
            a = a[0]
        a = as_vector(a, "anchor")
        a.setflags(write=False)
        object.__setattr__(self, "anchor", a)

    def input_dim(self):
        return self.anchor.size

    def output_dim(self, d: int) -> int:
        return 2 * d

    def _appended(self, X):
        return coordinate_distances(X, self.anchor, self.p)


@dataclass(frozen=True, eq=False)
class MultiAnchor(FeatureMapSpec):
    p: NormExponent
    anchor_sets: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", NormExponent.parse(self.p))
        sets = tuple(_anchor_set(A, f"anchor set {j}") for j, A in enumerate(self.anchor_sets))
        if len(sets) < 2:
            raise ValueError("multi-anchor map needs at least two anchor sets")
        if len({A.shape[1] for A in sets}) != 1:
            raise ValueError("all anchor sets must share the input dimension")
        object.__setattr__(self, "anchor_sets", sets)

    def input_dim(self):
        return self.anchor_sets[0].shape[1]

    def output_dim(self, d: int) -> int:
        return d + len(self.anchor_sets)

    def _appended(self, X):
        cols = [nearest_anchors(X, A, self.p)[1] for A in self.anchor_sets]
        return np.column_stack(cols)


class TwoAnchor(MultiAnchor):
    """Two anchor sets; same output as ``MultiAnchor`` with M = 2."""

    def __init__(self, p, anchors1, anchors2):
        super().__init__(p, (anchors1, anchors2))

    def __post_init__(self):
        super().__post_init__()
        if len(self.anchor_sets) != 2:
            raise ValueError("two-anchor map takes exactly two anchor sets")


def coordinate_distances(X, a, p) -> np.ndarray:
    """``|x_l - a_l|^p`` elementwise; power 1 for p = inf."""
    p = NormExponent.parse(p)
    diff = np.abs(np.atleast_2d(np.asarray(X, dtype=np.float64)) - np.asarray(a, dtype=np.float64))
    if p is NormExponent.P2:
        return diff * diff
    return diff


def output_dim(spec: FeatureMapSpec, d: int) -> int:
    if d < 1:
        raise ValueError("input dimension must be >= 1")
    return spec.output_dim(d)


def map_sample(spec: FeatureMapSpec, x) -> np.ndarray:
    x = as_vector(x, "x")
    return spec.transform(x[None, :])[0]


def map_dataset(spec: FeatureMapSpec, data: Dataset) -> Dataset:
    return data.with_features(spec.transform(data.X))


def load_anchors(path) -> np.ndarray:
    """Read anchors from a CSV file with one anchor per line (optional ``#`` comments)."""
    text = Path(path).read_text()
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(v) for v in line.split(",")])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: non-numeric anchor entry") from exc
    if not rows:
        raise ValueError(f"{path}: no anchors found")
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: anchors have differing lengths")
    return as_matrix(rows, "anchors")


def save_anchors(path, anchors: np.ndarray | Sequence) -> None:
    A = _anchor_set(anchors)
    with open(path, "w") as fh:
        for row in A:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
