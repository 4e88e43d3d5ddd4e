"""Low-dimensional conic feature maps, their kernels, SVM solvers and a
benchmark harness."""

__version__ = "0.1.0"

from .core import Dataset, NormExponent, nearest_anchor, p_distance  # noqa: E402,F401
