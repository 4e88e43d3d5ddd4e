"""Method registry: turns a method name plus hyperparameters into a fitted
classifier. Multi-class data is handled one-vs-rest over the binary solvers."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .. import anchors as anchor_sel
from ..approx import ApproxSpec, fit as fit_approx, transform as transform_approx
from ..core import Dataset, NormExponent
from ..feature_maps import Coordinatewise, FeatureMapSpec, Identity, MultiAnchor, SingleDistance, TwoAnchor, load_anchors
from ..kernels import RBF, Poly
from ..solvers import SvmHyper, train_kernel_svm, train_linear_svm

EXPLICIT = ("lin", "single", "coord", "two", "multi")
_PHI = re.compile(r"^phi_(1|2|inf|p)_(1|d|2|m)$")


@dataclass(frozen=True)
class Method:
    name: str
    family: str  # lin | single | coord | two | multi | pol | rbf | rff | nystrom
    p: NormExponent | None = None

    @property
    def axes(self) -> tuple[str, ...]:
        if self.family == "pol":
            return ("C", "q")
        if self.family in ("rbf", "rff", "nystrom"):
            return ("C", "gamma")
        return ("C",)

    @property
    def is_conic(self) -> bool:
        return self.family in ("single", "coord", "two", "multi")


def parse_method(name: str, p="2") -> Method:
    """Parse ``lin``, ``pol``, ``rbf``, ``rff``, ``nystrom`` or ``phi_<p>_<1|d|2|m>``.

    ``phi_p_*`` takes its exponent from ``p``.
    """
    key = name.strip().lower()
    if key in ("lin", "pol", "rbf", "rff", "nystrom"):
        return Method(key, key)
    match = _PHI.match(key)
    if not match:
        raise ValueError(f"unknown method {name!r}")
    exp = NormExponent.parse(p if match.group(1) == "p" else match.group(1))
    family = {"1": "single", "d": "coord", "2": "two", "m": "multi"}[match.group(2)]
    return Method(f"phi_{exp}_{match.group(2)}", family, exp)


def parse_anchor_strategy(text: str) -> tuple[str, object]:
    """``mean | class-means | kmeans:<k> | filtered:<q> | file:<path>``."""
    text = text.strip()
    if text in ("mean", "class-means"):
        return text, None
    kind, _, arg = text.partition(":")
    if kind == "kmeans" and arg:
        k = int(arg)
        if k < 1:
            raise ValueError("kmeans anchor strategy needs k >= 1")
        return kind, k
    if kind == "filtered" and arg:
        q = float(arg)
        if not 0 <= q < 1:
            raise ValueError("filtered anchor quantile must be in [0, 1)")
        return kind, q
    if kind == "file" and arg:
        return kind, arg
    raise ValueError(f"unknown anchor strategy {text!r}")


def class_anchor_sets(train: Dataset, strategy: str, p: NormExponent, seed: int) -> list[np.ndarray]:
    kind, arg = parse_anchor_strategy(strategy)
    if kind in ("mean", "class-means"):
        return anchor_sel.class_means(train)
    if kind == "kmeans":
        return anchor_sel.class_kmeans(train, arg, seed=seed)
    if kind == "filtered":
        return anchor_sel.filtered_sample_anchors(train, arg, p)
    raise ValueError("anchors from a file define a single set; per-class methods need a per-class strategy")


def build_map(method: Method, train: Dataset, strategy: str = "mean", zero_anchor: bool = True,
              seed: int = 0, anchor_transform=None) -> FeatureMapSpec:
    """Feature map for ``method`` with anchors computed from training data only.

    ``zero_anchor`` uses the origin in place of the mean (valid after
    standardisation). File anchors go through ``anchor_transform`` (the scaler).
    """
    d = train.d
    fam, p = method.family, method.p
    if fam == "lin":
        return Identity()
    kind, arg = parse_anchor_strategy(strategy)
    if fam in ("single", "coord"):
        if kind == "mean":
            A = np.zeros((1, d)) if zero_anchor else anchor_sel.global_mean(train)
        elif kind == "file":
            A = load_anchors(arg)
            if A.shape[1] != d:
                raise ValueError(f"anchor file has dimension {A.shape[1]}, data has {d}")
            if anchor_transform is not None:
                A = anchor_transform(A)
        else:
            A = np.vstack(class_anchor_sets(train, strategy, p, seed))
        if fam == "single":
            return SingleDistance(p, A)
        if A.shape[0] != 1:
            raise ValueError("the coordinatewise map takes a single anchor; use --anchors mean or a one-row file")
        return Coordinatewise(p, A[0])
    sets = class_anchor_sets(train, strategy, p, seed)
    if fam == "two":
        if len(sets) != 2:
            raise ValueError(f"phi_p_2 needs a binary dataset, got {len(sets)} classes")
        return TwoAnchor(p, sets[0], sets[1])
    return MultiAnchor(p, tuple(sets))


@dataclass(frozen=True)
class Config:
    """Settings shared by every fit of one method."""

    strategy: str = "mean"
    zero_anchor: bool = True
    approx_dim: int = 100
    tol: float = 1e-4
    max_iter: int | None = None
    seed: int = 0
    anchor_transform: object = None


class Fitted:
    """A trained classifier: feature transform followed by binary/OvR models."""

    def __init__(self, transform, models, classes, kind, feature_dim):
        self.transform = transform
        self.models = models
        self.classes = classes
        self.kind = kind
        self.feature_dim = feature_dim

    def decision_function(self, X) -> np.ndarray:
        F = self.transform(X)
        return np.column_stack([m.decision_function(F) for m in self.models])

    def predict(self, X) -> np.ndarray:
        scores = self.decision_function(X)
        if len(self.models) == 1:
            return np.where(scores[:, 0] >= 0.0, 1, -1)
        return self.classes[np.argmax(scores, axis=1)]


def _binary_targets(y: np.ndarray):
    classes = np.unique(y)
    if set(classes.tolist()) <= {-1, 1}:
        return classes, [y]
    return classes, [np.where(y == c, 1, -1) for c in classes]


def fit_method(method: Method, train: Dataset, hyper: dict, cfg: Config = Config()) -> Fitted:
    svm = SvmHyper(C=float(hyper["C"]), tol=cfg.tol, max_iter=cfg.max_iter)
    if method.family in EXPLICIT:
        spec = build_map(method, train, cfg.strategy, cfg.zero_anchor, cfg.seed, cfg.anchor_transform)
        transform = spec.transform
        kind = "linear"
    elif method.family in ("rff", "nystrom"):
        method_name = "fourier" if method.family == "rff" else "nystrom"
        dim = cfg.approx_dim
        if method_name == "nystrom" and dim > train.m:
            raise ValueError(f"Nystroem dimension {dim} exceeds the training size {train.m}")
        state = fit_approx(ApproxSpec(method_name, float(hyper["gamma"]), dim, cfg.seed), train.X)

        def transform(X, state=state):
            return transform_approx(state, X)
        kind = "linear"
    else:
        kernel = Poly(int(hyper["q"])) if method.family == "pol" else RBF(float(hyper["gamma"]))

        def transform(X):
            return np.asarray(X, dtype=np.float64)
        kind = "kernel"

    F = transform(train.X)
    classes, targets = _binary_targets(train.y)
    models = []
    for t in targets:
        ds = Dataset(F, t)
        if kind == "linear":
            models.append(train_linear_svm(ds, svm, seed=cfg.seed))
        else:
            models.append(train_kernel_svm(ds, kernel, svm))
    return Fitted(transform, models, classes, kind, F.shape[1])
