"""Anchor set construction: global mean, class means, per-class k-means and
distance-filtered sample anchors."""

from __future__ import annotations

import numpy as np

from .core import Dataset, NormExponent, pairwise_p_distances


def global_mean(data: Dataset) -> np.ndarray:
    """Singleton anchor set holding the columnwise mean, shape (1, d)."""
    return data.X.mean(axis=0)[None, :]


def _class_rows(data: Dataset):
    labels = np.unique(data.y)
    if labels.size < 2:
        raise ValueError("at least two classes are required to build per-class anchors")
    for label in labels:
        rows = data.X[data.y == label]
        if rows.shape[0] == 0:
            raise ValueError(f"class {label} has no samples")
        yield int(label), rows


def class_means(data: Dataset) -> list[np.ndarray]:
    """One singleton anchor set per class, in ascending label order."""
    return [rows.mean(axis=0)[None, :] for _, rows in _class_rows(data)]


def lloyd(points: np.ndarray, k: int, rng: np.random.Generator, max_iter: int):
    """Plain Lloyd iterations from centroids drawn without replacement.

    Returns (centroids, inertia); empty clusters are dropped.
    """
    n = points.shape[0]
    k = min(k, n)
    centroids = points[np.sort(rng.choice(n, size=k, replace=False))]
    assign = None
    for _ in range(max_iter):
        sq = pairwise_p_distances(points, centroids, NormExponent.P2)
        new_assign = np.argmin(sq, axis=1)
        if assign is not None and np.array_equal(new_assign, assign):
            break
        assign = new_assign
        kept = [c for c in range(centroids.shape[0]) if np.any(assign == c)]
        centroids = np.stack([points[assign == c].mean(axis=0) for c in kept])
        # relabel so cluster ids index into the reduced centroid array
        remap = {c: i for i, c in enumerate(kept)}
        assign = np.array([remap[c] for c in assign])
    sq = pairwise_p_distances(points, centroids, NormExponent.P2)
    return centroids, float(sq.min(axis=1).sum())


def class_kmeans(data: Dataset, k: int, seed: int = 0, max_iter: int = 100, n_init: int = 10):
    """Per-class k-means centroids as anchor sets (ascending label order).

    The best of ``n_init`` seeded restarts (lowest within-cluster sum of
    squares) is kept for every class.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    for _, rows in _class_rows(data):
        if min(k, rows.shape[0]) == 1:
            out.append(rows.mean(axis=0)[None, :])
            continue
        best = None
        for _ in range(max(1, n_init)):
            centroids, inertia = lloyd(rows, k, rng, max_iter)
            if best is None or inertia < best[1]:
                best = (centroids, inertia)
        out.append(best[0])
    return out


def within_class_nn_distances(rows: np.ndarray, p) -> np.ndarray:
    """p-distance from each row to its nearest other row (0 for a singleton)."""
    if rows.shape[0] < 2:
        return np.zeros(rows.shape[0])
    D = pairwise_p_distances(rows, rows, p)
    np.fill_diagonal(D, np.inf)
    return D.min(axis=1)


def filtered_sample_anchors(data: Dataset, quantile: float, p) -> list[np.ndarray]:
    """Per-class sample anchors whose nearest same-class distance clears a
    lower bound set at the given quantile of that class's distances.

    Falls back to the class mean if nothing survives.
    """
    if not 0.0 <= quantile < 1.0:
        raise ValueError("quantile must lie in [0, 1)")
    out = []
    for _, rows in _class_rows(data):
        dist = within_class_nn_distances(rows, p)
        threshold = np.quantile(dist, quantile, method="linear")
        keep = rows[dist >= threshold]
        out.append(keep if keep.shape[0] else rows.mean(axis=0)[None, :])
    return out
