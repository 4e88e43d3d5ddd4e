"""Kernel functions and Gram matrices.

The conic kernels are evaluated from their closed form (linear term plus a
product of distance terms) rather than by materialising the feature map, so
the two routes can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import NormExponent, as_matrix, as_vector, p_distances


class KernelSpec:
    name = "kernel"

    def gram(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def anchor_dim(self) -> int | None:
        return None

    def diag(self, X: np.ndarray) -> np.ndarray:
        """``k(x_i, x_i)`` for every row."""
        return np.array([self.gram(X[i:i + 1], X[i:i + 1])[0, 0] for i in range(X.shape[0])])


@dataclass(frozen=True)
class Linear(KernelSpec):
    name = "linear"

    def gram(self, X, Z):
        return X @ Z.T

    def diag(self, X):
        return np.einsum("ij,ij->i", X, X)


@dataclass(frozen=True)
class RBF(KernelSpec):
    gamma: float
    name = "rbf"

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("RBF gamma must be > 0")

    def gram(self, X, Z):
        return np.exp(-self.gamma * cdist(X, Z, "sqeuclidean"))

    def diag(self, X):
        return np.ones(X.shape[0])


@dataclass(frozen=True)
class Poly(KernelSpec):
    degree: int
    name = "poly"

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValueError("polynomial degree must be a positive integer")

    def gram(self, X, Z):
        return (X @ Z.T + 1.0) ** int(self.degree)

    def diag(self, X):
        return (np.einsum("ij,ij->i", X, X) + 1.0) ** int(self.degree)


@dataclass(frozen=True, eq=False)
class ConicSingle(KernelSpec):
    """``x.z + ||x-a||_p^p ||z-a||_p^p``."""

    p: NormExponent
    anchor: np.ndarray
    name = "conic_single"

    def __post_init__(self):
        object.__setattr__(self, "p", NormExponent.parse(self.p))
        object.__setattr__(self, "anchor", as_vector(self.anchor, "anchor"))

    def anchor_dim(self):
        return self.anchor.size

    def gram(self, X, Z):
        u = p_distances(X, self.anchor, self.p)
        v = p_distances(Z, self.anchor, self.p)
        return X @ Z.T + np.outer(u, v)

    def diag(self, X):
        u = p_distances(X, self.anchor, self.p)
        return np.einsum("ij,ij->i", X, X) + u * u


@dataclass(frozen=True, eq=False)
class ConicCoordinatewise(KernelSpec):
    """``x.z + sum_l |x_l-a_l|^p |z_l-a_l|^p`` (power 1 for p = inf)."""

    p: NormExponent
    anchor: np.ndarray
    name = "conic_coordinatewise"

    def __post_init__(self):
        object.__setattr__(self, "p", NormExponent.parse(self.p))
        object.__setattr__(self, "anchor", as_vector(self.anchor, "anchor"))

    def anchor_dim(self):
        return self.anchor.size

    def _powers(self, X):
        diff = np.abs(X - self.anchor)
        return diff * diff if self.p is NormExponent.P2 else diff

    def gram(self, X, Z):
        return X @ Z.T + self._powers(X) @ self._powers(Z).T

    def diag(self, X):
        P = self._powers(X)
        return np.einsum("ij,ij->i", X, X) + np.einsum("ij,ij->i", P, P)


def _check_dims(spec: KernelSpec, dx: int, dz: int) -> None:
    if dx != dz:
        raise ValueError(f"dimension mismatch: {dx} vs {dz}")
    da = spec.anchor_dim()
    if da is not None and da != dx:
        raise ValueError(f"dimension mismatch: inputs have length {dx}, anchor has length {da}")


def eval_kernel(spec: KernelSpec, x, z) -> float:
    x = as_vector(x, "x")
    z = as_vector(z, "z")
    _check_dims(spec, x.size, z.size)
    if isinstance(spec, Linear):
        return float(np.dot(x, z))
    if isinstance(spec, RBF):
        diff = x - z
        return float(np.exp(-spec.gamma * np.dot(diff, diff)))
    if isinstance(spec, Poly):
        return float((np.dot(x, z) + 1.0) ** int(spec.degree))
    if isinstance(spec, ConicSingle):
        u = p_distances(x[None, :], spec.anchor, spec.p)[0]
        v = p_distances(z[None, :], spec.anchor, spec.p)[0]
        return float(np.dot(x, z) + u * v)
    if isinstance(spec, ConicCoordinatewise):
        return float(np.dot(x, z) + np.dot(spec._powers(x), spec._powers(z)))
    raise TypeError(f"unknown kernel spec {spec!r}")


def gram_matrix(spec: KernelSpec, X, Z=None) -> np.ndarray:
    X = as_matrix(X, "X")
    if Z is None:
        _check_dims(spec, X.shape[1], X.shape[1])
        G = spec.gram(X, X)
        # mirror the upper triangle so the result is exactly symmetric
        return np.triu(G) + np.triu(G, 1).T
    Z = as_matrix(Z, "Z")
    _check_dims(spec, X.shape[1], Z.shape[1])
    return spec.gram(X, Z)
