from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Dataset


@dataclass(frozen=True, eq=False)
class ScalerState:
    mean: np.ndarray
    std: np.ndarray  # population std; constant columns stored as 1

    def transform(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.shape[-1] != self.mean.size:
            raise ValueError(f"dimension mismatch: scaler fitted on {self.mean.size} features, got {X.shape[-1]}")
        return (X - self.mean) / self.std


def fit_scaler(train: Dataset) -> ScalerState:
    mean = train.X.mean(axis=0)
    std = train.X.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return ScalerState(mean, std)


def apply_scaler(state: ScalerState, data: Dataset) -> Dataset:
    return data.with_features(state.transform(data.X))
