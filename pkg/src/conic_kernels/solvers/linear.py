"""Dual coordinate descent for the L1-hinge linear SVM.

The bias is folded in as an extra constant feature of value 1, so it is
regularised together with the weights and the dual has box constraints only.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numba
import numpy as np

from ..core import Dataset, as_matrix, require_binary

# epoch cap of the reference liblinear/LinearSVC solver
DEFAULT_MAX_EPOCHS = 1000


class ConvergenceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SvmHyper:
    C: float = 1.0
    tol: float = 1e-4
    max_iter: int | None = None  # None -> DEFAULT_MAX_EPOCHS (linear) or 100*m (SMO)

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("C must be > 0")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_iter is not None and self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")


@dataclass(eq=False)
class LinearModel:
    w: np.ndarray
    b: float = 0.0
    C: float | None = None
    seed: int = 0
    converged: bool = True
    n_iter: int = 0
    alphas: np.ndarray | None = None
    dual_objective: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def dim(self) -> int:
        return self.w.size

    def decision_function(self, X) -> np.ndarray:
        X = as_matrix(X, "X")
        if X.shape[1] != self.w.size:
            raise ValueError(f"dimension mismatch: model has {self.w.size} weights, X has {X.shape[1]} columns")
        return X @ self.w + self.b


@numba.njit(cache=True)
def _dual_cd(X, y, C, tol, max_epochs, seed, alpha, w, history):
    m, n = X.shape
    np.random.seed(seed)
    qd = np.empty(m)
    for i in range(m):
        s = 0.0
        for k in range(n):
            s += X[i, k] * X[i, k]
        qd[i] = s
    for epoch in range(max_epochs):
        perm = np.random.permutation(m)
        max_viol = 0.0
        for t in range(m):
            i = perm[t]
            g = 0.0
            for k in range(n):
                g += w[k] * X[i, k]
            g = y[i] * g - 1.0
            a = alpha[i]
            if a <= 0.0:
                pg = min(g, 0.0)
            elif a >= C:
                pg = max(g, 0.0)
            else:
                pg = g
            if abs(pg) > max_viol:
                max_viol = abs(pg)
            if pg != 0.0:
                new = min(max(a - g / qd[i], 0.0), C)
                delta = (new - a) * y[i]
                if delta != 0.0:
                    for k in range(n):
                        w[k] += delta * X[i, k]
                alpha[i] = new
        obj = 0.0
        for i in range(m):
            obj += alpha[i]
        ww = 0.0
        for k in range(n):
            ww += w[k] * w[k]
        history[epoch] = obj - 0.5 * ww
        if max_viol <= tol:
            return epoch + 1, True
    return max_epochs, False


def _augment(X: np.ndarray) -> np.ndarray:
    return np.hstack([X, np.ones((X.shape[0], 1))])


def train_linear_svm(data: Dataset, hyper: SvmHyper = SvmHyper(), seed: int = 0) -> LinearModel:
    """Train a binary linear SVM; returns weights over the features of ``data``."""
    require_binary(data)
    X = _augment(np.ascontiguousarray(data.X, dtype=np.float64))
    y = data.y.astype(np.float64)
    max_epochs = hyper.max_iter if hyper.max_iter is not None else DEFAULT_MAX_EPOCHS
    alpha = np.zeros(data.m)
    w = np.zeros(X.shape[1])
    history = np.zeros(max_epochs)
    n_iter, converged = _dual_cd(X, y, float(hyper.C), float(hyper.tol), int(max_epochs), int(seed),
                                 alpha, w, history)
    if not converged:
        warnings.warn(f"dual coordinate descent did not converge in {max_epochs} epochs (C={hyper.C})",
                      ConvergenceWarning, stacklevel=2)
    return LinearModel(w=w[:-1].copy(), b=float(w[-1]), C=hyper.C, seed=seed, converged=bool(converged),
                       n_iter=int(n_iter), alphas=alpha, dual_objective=history[:n_iter].copy())


def predict_linear(model: LinearModel, X) -> np.ndarray:
    """+1 where ``w.x + b >= 0``, else -1."""
    return np.where(model.decision_function(X) >= 0.0, 1, -1)


def linear_dual_objective(X, y, alpha) -> float:
    """Dual objective of the augmented problem for a given alpha."""
    Xa = _augment(as_matrix(X))
    v = Xa.T @ (np.asarray(alpha) * np.asarray(y, dtype=np.float64))
    return float(np.sum(alpha) - 0.5 * v @ v)


def warmup() -> None:
    """Trigger JIT compilation so timings exclude it."""
    X = np.array([[1.0, 0.0], [-1.0, 0.0]])
    train_linear_svm(Dataset(X, np.array([1, -1])), SvmHyper(C=1.0, max_iter=5))
