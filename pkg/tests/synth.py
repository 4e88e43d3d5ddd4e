"""Seeded synthetic datasets shared by the module and acceptance tests."""

import numpy as np

from conic_kernels.core import Dataset, p_distances


def _directions(rng, n, d):
    v = rng.normal(size=(n, d))
    return v / np.abs(v).max(axis=1, keepdims=True)


def ring(seed, p, violate=False, d=None):
    """Negatives inside radius r_in, positives outside r_out around a random
    anchor (in the p-distance sense). With ``violate`` one negative is pushed
    beyond the closest positive so neither ordering holds.
    """
    rng = np.random.default_rng(seed)
    d = d or int(rng.integers(2, 6))
    a = rng.normal(size=d)
    n_pos, n_neg = int(rng.integers(3, 20)), int(rng.integers(3, 20))

    def at_distance(r):
        u = _directions(rng, r.size, d)
        unit = p_distances(u, np.zeros(d), p)
        return a + u * _scale(r, unit, p)[:, None]

    inner = rng.uniform(0.2, 1.0, n_neg)
    outer = rng.uniform(1.5, 3.0, n_pos)
    X = np.vstack([at_distance(outer), at_distance(inner)])
    y = np.concatenate([np.ones(n_pos, int), -np.ones(n_neg, int)])
    if violate:
        X[n_pos] = at_distance(np.array([3.5]))[0]
        X[0] = at_distance(np.array([0.5]))[0]
    if rng.random() < 0.5:
        y = -y
    return Dataset(X, y), a


def _scale(r, unit, p):
    # p-distance scales with t**1 for p in {1, inf} and t**2 for p = 2
    return (r / unit) ** (0.5 if p.value == "2" else 1.0)


def axis_gap(seed, violate=False):
    """Coordinate ``ell`` separates: |x_ell - a_ell| < 1 for one class and > 2
    for the other; every other coordinate overlaps. With ``violate`` every
    coordinate overlaps.
    """
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 6))
    ell = int(rng.integers(0, d))
    a = rng.normal(size=d)
    n_pos, n_neg = int(rng.integers(3, 20)), int(rng.integers(3, 20))
    m = n_pos + n_neg
    X = a + rng.uniform(-3, 3, size=(m, d))
    sign = rng.choice([-1.0, 1.0], size=m)
    X[:n_pos, ell] = a[ell] + sign[:n_pos] * rng.uniform(2.0, 3.0, n_pos)
    X[n_pos:, ell] = a[ell] + sign[n_pos:] * rng.uniform(0.0, 1.0, n_neg)
    y = np.concatenate([np.ones(n_pos, int), -np.ones(n_neg, int)])
    for j in range(d):
        if j != ell:
            # force overlap of the coordinate distances
            X[0, j], X[n_pos, j] = a[j] + 0.1, a[j] + 2.9
            X[1, j], X[n_pos + 1, j] = a[j] + 2.9, a[j] + 0.1
    if violate:
        X[0, ell] = a[ell] + 0.5
        X[n_pos, ell] = a[ell] + 2.5
    if rng.random() < 0.5:
        y = -y
    return Dataset(X, y), a, ell


def magic_like(m=19000, d=10, seed=42):
    """Standardised nonlinear binary problem of the size of the Magic set."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(m, d))
    score = X[:, 0] + 0.5 * X[:, 1] + 0.3 * (X**2).sum(axis=1) - 3 + rng.normal(0, 0.8, m)
    y = np.where(score > 0, 1, -1)
    X = (X - X.mean(axis=0)) / X.std(axis=0)
    return Dataset(X, y, "magic-like")
