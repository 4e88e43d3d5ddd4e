"""Primal weights from dual coefficients for kernels with a finite explicit map."""

from __future__ import annotations

import numpy as np

from ..feature_maps import Coordinatewise, FeatureMapSpec, Identity, SingleDistance
from ..kernels import ConicCoordinatewise, ConicSingle, Linear
from .linear import LinearModel
from .smo import KernelModel


def _same_anchor(spec_anchor: np.ndarray, kernel_anchor: np.ndarray) -> bool:
    return spec_anchor.shape == kernel_anchor.shape and np.array_equal(spec_anchor, kernel_anchor)


def check_map_matches(kernel, spec: FeatureMapSpec) -> None:
    if isinstance(kernel, Linear):
        ok = isinstance(spec, Identity)
    elif isinstance(kernel, ConicSingle):
        ok = (isinstance(spec, SingleDistance) and spec.p is kernel.p and spec.anchors.shape[0] == 1
              and _same_anchor(spec.anchors[0], kernel.anchor))
    elif isinstance(kernel, ConicCoordinatewise):
        ok = isinstance(spec, Coordinatewise) and spec.p is kernel.p and _same_anchor(spec.anchor, kernel.anchor)
    else:
        raise ValueError(f"kernel {kernel.name!r} has no finite explicit feature map; primal weights unavailable")
    if not ok:
        raise ValueError(f"feature map {spec!r} does not induce kernel {kernel!r}")


def recover_primal_weights(model: KernelModel, spec: FeatureMapSpec) -> LinearModel:
    """``w = sum_i alpha_i y_i phi(x_i)``; the bias carries over unchanged."""
    check_map_matches(model.kernel, spec)
    coef = model.dual_coef()
    sv = np.flatnonzero(coef != 0)
    out_dim = spec.output_dim(model.X.shape[1])
    if sv.size == 0:
        w = np.zeros(out_dim)
    else:
        w = spec.transform(model.X[sv]).T @ coef[sv]
    return LinearModel(w=w, b=float(model.b), C=model.C, converged=model.converged, n_iter=model.n_iter)
