"""Random Fourier features and Nystroem features for the RBF kernel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix
from .kernels import RBF, gram_matrix

# eigenvalues of the landmark Gram below this fraction of the largest are dropped
NYSTROM_RTOL = 1e-12


@dataclass(frozen=True)
class ApproxSpec:
    method: str  # "fourier" | "nystrom"
    gamma: float
    dim: int
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("fourier", "nystrom"):
            raise ValueError(f"unknown approximation method {self.method!r}")
        if self.dim < 1:
            raise ValueError("transformed dimension must be >= 1")
        if not self.gamma > 0:
            raise ValueError("gamma must be > 0")


@dataclass(frozen=True, eq=False)
class FourierState:
    omega: np.ndarray  # (D, d)
    phase: np.ndarray  # (D,)

    @property
    def input_dim(self) -> int:
        return self.omega.shape[1]

    @property
    def dim(self) -> int:
        return self.omega.shape[0]


@dataclass(frozen=True, eq=False)
class NystromState:
    landmarks: np.ndarray  # (D, d)
    normalization: np.ndarray  # (D, rank)
    gamma: float
    landmark_indices: np.ndarray

    @property
    def input_dim(self) -> int:
        return self.landmarks.shape[1]

    @property
    def rank(self) -> int:
        return self.normalization.shape[1]


def fit_fourier(spec: ApproxSpec, d: int) -> FourierState:
    if d < 1:
        raise ValueError("input dimension must be >= 1")
    rng = np.random.default_rng(spec.seed)
    omega = rng.normal(0.0, np.sqrt(2.0 * spec.gamma), size=(spec.dim, d))
    phase = rng.uniform(0.0, 2.0 * np.pi, size=spec.dim)
    return FourierState(omega, phase)


def transform_fourier(state: FourierState, X) -> np.ndarray:
    X = as_matrix(X, "X")
    if X.shape[1] != state.input_dim:
        raise ValueError(f"dimension mismatch: fitted on {state.input_dim} features, got {X.shape[1]}")
    return np.sqrt(2.0 / state.dim) * np.cos(X @ state.omega.T + state.phase)


def fit_nystrom(spec: ApproxSpec, X) -> NystromState:
    X = as_matrix(X, "X")
    m = X.shape[0]
    if spec.dim > m:
        raise ValueError(f"Nystroem dimension {spec.dim} exceeds the number of samples {m}")
    rng = np.random.default_rng(spec.seed)
    idx = rng.choice(m, size=spec.dim, replace=False)
    landmarks = X[idx]
    W = gram_matrix(RBF(spec.gamma), landmarks)
    evals, evecs = np.linalg.eigh(W)
    keep = evals > NYSTROM_RTOL * evals.max()
    normalization = evecs[:, keep] / np.sqrt(evals[keep])
    return NystromState(landmarks, normalization, spec.gamma, idx)


def transform_nystrom(state: NystromState, X) -> np.ndarray:
    X = as_matrix(X, "X")
    if X.shape[1] != state.input_dim:
        raise ValueError(f"dimension mismatch: fitted on {state.input_dim} features, got {X.shape[1]}")
    return gram_matrix(RBF(state.gamma), X, state.landmarks) @ state.normalization


def fit(spec: ApproxSpec, X):
    X = as_matrix(X, "X")
    if spec.method == "fourier":
        return fit_fourier(spec, X.shape[1])
    return fit_nystrom(spec, X)


def transform(state, X) -> np.ndarray:
    if isinstance(state, FourierState):
        return transform_fourier(state, X)
    return transform_nystrom(state, X)
