"""Brute-force references that share no code with the solvers."""

import itertools

import numpy as np


def dual_objective(Q, alpha):
    return float(alpha.sum() - 0.5 * alpha @ Q @ alpha)


def enumerate_box_qp(Q, C, y=None):
    """Maximise ``sum(a) - a'Qa/2`` over ``[0, C]^n`` (and ``y'a = 0`` if ``y`` given)
    by enumerating every assignment of variables to {lower, upper, free} and
    solving the stationarity system on the free block.

    Exponential in n; intended for n <= 6.
    """
    n = Q.shape[0]
    best_val, best_alpha = -np.inf, None
    for pattern in itertools.product((0, 1, 2), repeat=n):
        alpha = np.zeros(n)
        free = [i for i, s in enumerate(pattern) if s == 2]
        fixed = [i for i, s in enumerate(pattern) if s != 2]
        for i in fixed:
            alpha[i] = 0.0 if pattern[i] == 0 else C
        if free:
            F = np.array(free)
            B = np.array(fixed, dtype=int)
            rhs = np.ones(F.size) - (Q[np.ix_(F, B)] @ alpha[B] if B.size else 0.0)
            if y is None:
                A = Q[np.ix_(F, F)]
                sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
                if not np.allclose(A @ sol, rhs, atol=1e-9):
                    continue
                alpha[F] = sol
            else:
                k = F.size
                K = np.zeros((k + 1, k + 1))
                K[:k, :k] = Q[np.ix_(F, F)]
                K[:k, k] = y[F]
                K[k, :k] = y[F]
                r = np.concatenate([rhs, [-(y[B] @ alpha[B]) if B.size else 0.0]])
                sol, *_ = np.linalg.lstsq(K, r, rcond=None)
                if not np.allclose(K @ sol, r, atol=1e-9):
                    continue
                alpha[F] = sol[:k]
        if np.any(alpha < -1e-12) or np.any(alpha > C + 1e-12):
            continue
        if y is not None and abs(y @ alpha) > 1e-9:
            continue
        val = dual_objective(Q, alpha)
        if val > best_val:
            best_val, best_alpha = val, alpha
    return best_val, best_alpha


def grid_box_qp(Q, C, y=None, steps=101, rounds=3):
    """Exhaustive grid over ``[0, C]^n`` with ``steps`` points per axis; with
    ``y`` the last variable is eliminated through ``y'a = 0`` and kept only if
    it lands in the box. Each further round re-grids two cells around the best
    point found so far.
    """
    n = Q.shape[0]
    free_n = n if y is None else n - 1
    lo, hi = np.zeros(free_n), np.full(free_n, float(C))
    best_val, best_alpha = -np.inf, None
    for _ in range(rounds):
        axes = [np.linspace(lo[i], hi[i], steps) for i in range(free_n)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, free_n)
        if y is not None:
            last = -(grid @ y[:-1]) / y[-1]
            ok = (last >= 0) & (last <= C)
            grid = np.column_stack([grid[ok], last[ok]])
        vals = grid.sum(axis=1) - 0.5 * np.einsum("ij,jk,ik->i", grid, Q, grid)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_alpha = float(vals[k]), grid[k]
        h = (hi - lo) / (steps - 1)
        lo = np.clip(best_alpha[:free_n] - 2 * h, 0, C)
        hi = np.clip(best_alpha[:free_n] + 2 * h, 0, C)
    return best_val, best_alpha
