"""Sufficient conditions for linear separability after a conic map, with the
explicit witness hyperplane that certifies each one.

If every positive sample is strictly farther from the anchor than every
negative one (or strictly closer), the distance feature alone separates the
classes: weight +1 (or -1) on that feature and a threshold at the midpoint of
the class-wise extrema.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import Dataset, NormExponent, as_vector, nearest_anchors, p_distances, require_binary
from .feature_maps import Coordinatewise, SingleDistance, coordinate_distances
from .solvers.linear import LinearModel


class Condition(enum.Enum):
    PLUS_ABOVE = "PlusAbove"  # min over positives > max over negatives
    PLUS_BELOW = "PlusBelow"  # max over positives < min over negatives
    NONE = "None"


@dataclass(eq=False)
class SeparabilityReport:
    separable: bool
    condition: Condition
    mu: float
    nu: float
    dimension: int | None = None  # 1-based coordinate for the coordinatewise check
    witness: LinearModel | None = None
    map_spec: object = None

    @property
    def gap(self) -> float:
        return self.mu - self.nu

    def as_dict(self) -> dict:
        out = {
            "separable": str(self.separable).lower(),
            "condition": self.condition.value,
            "mu": f"{self.mu:.17g}",
            "nu": f"{self.nu:.17g}",
            "gap": f"{self.gap:.17g}",
        }
        if self.dimension is not None:
            out["dimension"] = str(self.dimension)
        if self.witness is not None:
            nz = np.flatnonzero(self.witness.w)
            out["witness_dim"] = str(self.witness.dim)
            out["witness_nonzero"] = ",".join(f"{i + 1}:{self.witness.w[i]:g}" for i in nz)
            out["witness_bias"] = f"{self.witness.b:.17g}"
        return out

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def _extrema(values: np.ndarray, y: np.ndarray):
    """Return (condition, mu, nu) for one distance column; non-firing -> first pair."""
    vp, vn = values[y > 0], values[y < 0]
    if vp.min() > vn.max():
        return Condition.PLUS_ABOVE, float(vp.min()), float(vn.max())
    if vp.max() < vn.min():
        # roles reversed: mu over negatives, nu over positives
        return Condition.PLUS_BELOW, float(vn.min()), float(vp.max())
    return Condition.NONE, float(vp.min()), float(vn.max())


def _witness(out_dim: int, column: int, condition: Condition, mu: float, nu: float) -> LinearModel:
    w = np.zeros(out_dim)
    mid = 0.5 * (mu + nu)
    if condition is Condition.PLUS_ABOVE:
        w[column] = 1.0
        b = -mid
    else:
        w[column] = -1.0
        b = mid
    return LinearModel(w=w, b=b)


def _verify(witness: LinearModel, mapped: np.ndarray, y: np.ndarray) -> None:
    margins = y * witness.decision_function(mapped)
    if not np.all(margins > 0):
        raise ArithmeticError("witness hyperplane failed to separate the mapped samples "
                              "(class extrema are too close for the midpoint to be representable)")


def _distance_report(data: Dataset, distances: np.ndarray, spec) -> SeparabilityReport:
    y = data.y
    cond, mu, nu = _extrema(distances, y)
    if cond is Condition.NONE:
        return SeparabilityReport(False, cond, mu, nu, map_spec=spec)
    witness = _witness(data.d + 1, data.d, cond, mu, nu)
    _verify(witness, spec.transform(data.X), y)
    return SeparabilityReport(True, cond, mu, nu, witness=witness, map_spec=spec)


def check_single_anchor(data: Dataset, a, p) -> SeparabilityReport:
    require_binary(data)
    a = as_vector(a, "anchor")
    p = NormExponent.parse(p)
    return _distance_report(data, p_distances(data.X, a, p), SingleDistance(p, a[None, :]))


def check_multi_anchor(data: Dataset, anchors, p) -> SeparabilityReport:
    require_binary(data)
    A = np.atleast_2d(np.asarray(anchors, dtype=np.float64))
    if A.size == 0:
        raise ValueError("anchor set is empty")
    p = NormExponent.parse(p)
    spec = SingleDistance(p, A)
    return _distance_report(data, nearest_anchors(data.X, spec.anchors, p)[1], spec)


def check_coordinatewise(data: Dataset, a, p) -> SeparabilityReport:
    """Scan coordinates in order; the first that separates is reported."""
    require_binary(data)
    a = as_vector(a, "anchor")
    p = NormExponent.parse(p)
    spec = Coordinatewise(p, a)
    U = coordinate_distances(data.X, a, p)
    first = None
    for ell in range(data.d):
        cond, mu, nu = _extrema(U[:, ell], data.y)
        if first is None:
            first = (mu, nu)
        if cond is not Condition.NONE:
            witness = _witness(2 * data.d, data.d + ell, cond, mu, nu)
            _verify(witness, spec.transform(data.X), data.y)
            return SeparabilityReport(True, cond, mu, nu, dimension=ell + 1, witness=witness, map_spec=spec)
    return SeparabilityReport(False, Condition.NONE, first[0], first[1], map_spec=spec)
