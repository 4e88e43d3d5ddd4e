"""SMO for the kernel SVM dual with maximal-violating-pair working sets."""

from __future__ import annotations

import warnings
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from ..core import Dataset, as_matrix, require_binary
from ..kernels import KernelSpec, gram_matrix
from .linear import ConvergenceWarning, SvmHyper

MAX_SAMPLES = 20000
# full Gram is precomputed while it fits in this many bytes; rows are cached otherwise
FULL_GRAM_BYTES = 512 * 2**20
ROW_CACHE_BYTES = 512 * 2**20
TAU = 1e-12


class KernelRows:
    """Column access to the training Gram matrix."""

    def __init__(self, kernel: KernelSpec, X: np.ndarray):
        self.kernel = kernel
        self.X = X
        m = X.shape[0]
        self.full = None
        if m * m * 8 <= FULL_GRAM_BYTES:
            self.full = gram_matrix(kernel, X)
            self.diag = np.diag(self.full).copy()
        else:
            self.diag = kernel.diag(X)
            self.cache: OrderedDict[int, np.ndarray] = OrderedDict()
            self.capacity = max(2, ROW_CACHE_BYTES // (8 * m))

    def row(self, i: int) -> np.ndarray:
        if self.full is not None:
            return self.full[i]
        r = self.cache.get(i)
        if r is None:
            r = self.kernel.gram(self.X[i:i + 1], self.X)[0]
            self.cache[i] = r
            if len(self.cache) > self.capacity:
                self.cache.popitem(last=False)
        else:
            self.cache.move_to_end(i)
        return r


@dataclass(eq=False)
class KernelModel:
    alphas: np.ndarray
    b: float
    X: np.ndarray
    y: np.ndarray
    kernel: KernelSpec
    C: float
    converged: bool = True
    n_iter: int = 0

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.alphas > 0)

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    def dual_coef(self) -> np.ndarray:
        return self.alphas * self.y

    def decision_function(self, X) -> np.ndarray:
        X = as_matrix(X, "X")
        if X.shape[1] != self.X.shape[1]:
            raise ValueError(f"dimension mismatch: model has {self.X.shape[1]} features, X has {X.shape[1]}")
        sv = self.support
        if sv.size == 0:
            return np.full(X.shape[0], self.b)
        out = np.empty(X.shape[0])
        coef = self.dual_coef()[sv]
        for start in range(0, X.shape[0], 2048):
            out[start:start + 2048] = gram_matrix(self.kernel, X[start:start + 2048], self.X[sv]) @ coef
        return out + self.b


def train_kernel_svm(data: Dataset, kernel: KernelSpec, hyper: SvmHyper = SvmHyper()) -> KernelModel:
    require_binary(data)
    m = data.m
    if m > MAX_SAMPLES:
        raise ValueError(f"kernel SVM limited to {MAX_SAMPLES} samples, got {m}")
    X = np.ascontiguousarray(data.X)
    y = data.y.astype(np.float64)
    C = float(hyper.C)
    rows = KernelRows(kernel, X)
    max_iter = hyper.max_iter if hyper.max_iter is not None else 100 * m

    alpha = np.zeros(m)
    grad = -np.ones(m)  # gradient of 0.5 a'Qa - e'a
    pos = y > 0
    converged = False
    it = 0
    while it < max_iter:
        score = -y * grad
        up = np.where(pos, alpha < C, alpha > 0)
        low = np.where(pos, alpha > 0, alpha < C)
        s_up = np.where(up, score, -np.inf)
        s_low = np.where(low, score, np.inf)
        i = int(np.argmax(s_up))
        j = int(np.argmin(s_low))
        if s_up[i] - s_low[j] <= hyper.tol:
            converged = True
            break
        Ki = rows.row(i)
        Kj = rows.row(j)
        curv = rows.diag[i] + rows.diag[j] - 2.0 * Ki[j]
        if curv <= 0:
            curv = TAU
        t = (s_up[i] - s_low[j]) / curv
        # alpha_i moves by y_i t and alpha_j by -y_j t, t >= 0
        lim_i = C - alpha[i] if pos[i] else alpha[i]
        lim_j = alpha[j] if pos[j] else C - alpha[j]
        t = min(t, lim_i, lim_j)
        if t == lim_i:
            alpha[i] = C if pos[i] else 0.0
        else:
            alpha[i] += y[i] * t
        if t == lim_j:
            alpha[j] = 0.0 if pos[j] else C
        else:
            alpha[j] -= y[j] * t
        grad += t * y * (Ki - Kj)
        it += 1

    if not converged:
        warnings.warn(f"SMO did not converge in {max_iter} iterations (C={C})", ConvergenceWarning, stacklevel=2)
    b = _bias(alpha, grad, y, C)
    return KernelModel(alphas=alpha, b=b, X=X.copy(), y=data.y.copy(), kernel=kernel, C=C,
                       converged=converged, n_iter=it)


def _bias(alpha, grad, y, C) -> float:
    yg = y * grad
    free = (alpha > 0) & (alpha < C)
    if np.any(free):
        rho = float(yg[free].mean())
    else:
        pos = y > 0
        ub_set = np.where(pos, alpha <= 0, alpha >= C)
        lb_set = np.where(pos, alpha >= C, alpha <= 0)
        ub = yg[ub_set].min() if np.any(ub_set) else np.inf
        lb = yg[lb_set].max() if np.any(lb_set) else -np.inf
        if np.isfinite(ub) and np.isfinite(lb):
            rho = 0.5 * (ub + lb)
        else:
            rho = float(ub if np.isfinite(ub) else lb)
    return -rho


def predict_kernel(model: KernelModel, X) -> np.ndarray:
    return np.where(model.decision_function(X) >= 0.0, 1, -1)


def kernel_dual_objective(K, y, alpha) -> float:
    """``sum(alpha) - 0.5 (alpha*y)' K (alpha*y)`` (to be maximised)."""
    v = np.asarray(alpha) * np.asarray(y, dtype=np.float64)
    return float(np.sum(alpha) - 0.5 * v @ np.asarray(K) @ v)
