"""Seeded stratified splits."""

from __future__ import annotations

import math

import numpy as np

from ..core import Dataset


def _labels(data) -> np.ndarray:
    return data.y if isinstance(data, Dataset) else np.asarray(data)


def stratified_kfold(data, k: int, seed: int = 0) -> list[tuple[np.ndarray, np.ndarray]]:
    """k (train, test) index pairs; each fold holds within one sample per class
    of its share.

    Classes are dealt round-robin after a seeded shuffle, continuing from the
    fold where the previous class stopped so fold sizes stay balanced.
    """
    y = _labels(data)
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = np.random.default_rng(seed)
    fold_of = np.empty(y.size, dtype=np.int64)
    offset = 0
    for label in np.unique(y):
        idx = np.flatnonzero(y == label)
        if idx.size < k:
            raise ValueError(f"class {label} has {idx.size} samples, fewer than k={k}")
        idx = rng.permutation(idx)
        fold_of[idx] = (offset + np.arange(idx.size)) % k
        offset = (offset + idx.size) % k
    folds = []
    for f in range(k):
        test = np.flatnonzero(fold_of == f)
        train = np.flatnonzero(fold_of != f)
        folds.append((train, test))
    return folds


def holdout_split(data, train_fraction: float = 0.7, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Stratified (train, test) index arrays; each class contributes
    ``floor(train_fraction * n_c + 0.5)`` training samples."""
    y = _labels(data)
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    train, test = [], []
    for label in np.unique(y):
        idx = np.flatnonzero(y == label)
        if idx.size < 2:
            raise ValueError(f"class {label} needs at least 2 samples for a hold-out split")
        idx = rng.permutation(idx)
        n_train = min(idx.size - 1, max(1, math.floor(train_fraction * idx.size + 0.5)))
        train.append(idx[:n_train])
        test.append(idx[n_train:])
    return np.sort(np.concatenate(train)), np.sort(np.concatenate(test))
