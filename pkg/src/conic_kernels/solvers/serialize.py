"""Versioned flat-text model files.

Layout::

    conic-kernels-model 1 kind=<linear|kernel> dim=<d> C=<C> ...
    b <bias>
    w <weight>                      # linear: one line per weight
    anchor <a_1> ... <a_d>          # conic kernels only
    sv <alpha> <label> <x_1> ... <x_d>   # kernel: one line per support vector

Reals are written with 17 significant digits, so a round trip is exact.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..kernels import RBF, ConicCoordinatewise, ConicSingle, Linear, Poly
from .linear import LinearModel
from .smo import KernelModel

MAGIC = "conic-kernels-model"
VERSION = 1


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _kernel_fields(kernel) -> dict:
    if isinstance(kernel, Linear):
        return {"kernel": "linear"}
    if isinstance(kernel, RBF):
        return {"kernel": "rbf", "gamma": _fmt(kernel.gamma)}
    if isinstance(kernel, Poly):
        return {"kernel": "poly", "degree": str(int(kernel.degree))}
    if isinstance(kernel, (ConicSingle, ConicCoordinatewise)):
        return {"kernel": kernel.name, "p": str(kernel.p)}
    raise TypeError(f"cannot serialise kernel {kernel!r}")


def dumps(model) -> str:
    if isinstance(model, LinearModel):
        head = {"kind": "linear", "dim": str(model.dim), "C": _fmt(model.C if model.C is not None else np.nan),
                "seed": str(model.seed), "converged": str(int(model.converged)), "n_iter": str(model.n_iter)}
        lines = [f"b {_fmt(model.b)}"] + [f"w {_fmt(v)}" for v in model.w]
    elif isinstance(model, KernelModel):
        sv = model.support
        head = {"kind": "kernel", "dim": str(model.dim), "n_sv": str(sv.size), "C": _fmt(model.C),
                **_kernel_fields(model.kernel), "converged": str(int(model.converged)), "n_iter": str(model.n_iter)}
        lines = [f"b {_fmt(model.b)}"]
        if hasattr(model.kernel, "anchor"):
            lines.append("anchor " + " ".join(_fmt(v) for v in model.kernel.anchor))
        for i in sv:
            vals = " ".join(_fmt(v) for v in model.X[i])
            lines.append(f"sv {_fmt(model.alphas[i])} {int(model.y[i])} {vals}")
    else:
        raise TypeError(f"cannot serialise {type(model).__name__}")
    header = " ".join([MAGIC, str(VERSION)] + [f"{k}={v}" for k, v in head.items()])
    return "\n".join([header] + lines) + "\n"


def _parse_kernel(head: dict, anchor):
    name = head["kernel"]
    if name == "linear":
        return Linear()
    if name == "rbf":
        return RBF(float(head["gamma"]))
    if name == "poly":
        return Poly(int(head["degree"]))
    if anchor is None:
        raise ValueError(f"model file for kernel {name} lacks an anchor line")
    if name == "conic_single":
        return ConicSingle(head["p"], anchor)
    if name == "conic_coordinatewise":
        return ConicCoordinatewise(head["p"], anchor)
    raise ValueError(f"unknown kernel {name!r} in model file")


def loads(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty model file")
    tokens = lines[0].split()
    if len(tokens) < 2 or tokens[0] != MAGIC:
        raise ValueError("not a model file")
    if int(tokens[1]) != VERSION:
        raise ValueError(f"unsupported model file version {tokens[1]}")
    head = dict(t.split("=", 1) for t in tokens[2:])
    b = 0.0
    w, svs, anchor = [], [], None
    for ln in lines[1:]:
        tag, *vals = ln.split()
        if tag == "b":
            b = float(vals[0])
        elif tag == "w":
            w.append(float(vals[0]))
        elif tag == "anchor":
            anchor = np.array([float(v) for v in vals])
        elif tag == "sv":
            svs.append([float(v) for v in vals])
        else:
            raise ValueError(f"unknown record {tag!r} in model file")
    dim = int(head["dim"])
    converged = head.get("converged", "1") == "1"
    n_iter = int(head.get("n_iter", 0))
    if head["kind"] == "linear":
        if len(w) != dim:
            raise ValueError(f"model header says dim={dim} but file holds {len(w)} weights")
        C = float(head["C"])
        return LinearModel(w=np.array(w), b=b, C=None if np.isnan(C) else C, seed=int(head.get("seed", 0)),
                           converged=converged, n_iter=n_iter)
    arr = np.array(svs).reshape(-1, dim + 2)
    return KernelModel(alphas=arr[:, 0], b=b, X=arr[:, 2:], y=arr[:, 1].astype(np.int64),
                       kernel=_parse_kernel(head, anchor), C=float(head["C"]), converged=converged, n_iter=n_iter)


def save_model(model, path) -> None:
    Path(path).write_text(dumps(model))


def load_model(path):
    return loads(Path(path).read_text())
