"""Dataset readers (libsvm text, CSV with header) and report writers."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import Dataset, encode_labels

REPORT_COLUMNS = ["dataset", "method", "p", "accuracy", "train_seconds", "gridsearch_seconds",
                  "chosen_C", "chosen_gamma", "chosen_q", "seed"]


def load_libsvm(path, n_features: int | None = None, name: str | None = None) -> Dataset:
    """Parse ``label idx:val ...`` lines (1-based indices, missing entries 0).

    Blank lines and ``#`` comments are skipped. The dimension is the largest
    index in the file unless ``n_features`` is given.
    """
    path = Path(path)
    labels, rows = [], []
    max_idx = 0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                label = float(parts[0])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed label {parts[0]!r}") from None
            entries = {}
            for tok in parts[1:]:
                idx_s, sep, val_s = tok.partition(":")
                if not sep:
                    raise ValueError(f"{path}:{lineno}: malformed entry {tok!r}, expected idx:val")
                try:
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: non-numeric entry {tok!r}") from None
                if idx < 1:
                    raise ValueError(f"{path}:{lineno}: feature index {idx} must be >= 1")
                entries[idx] = val
                max_idx = max(max_idx, idx)
            labels.append(label)
            rows.append(entries)
    if not rows:
        raise ValueError(f"{path}: no samples")
    d = max_idx if n_features is None else n_features
    if d < max_idx:
        raise ValueError(f"{path}: feature index {max_idx} exceeds n_features={n_features}")
    X = np.zeros((len(rows), max(d, 1)))
    for i, entries in enumerate(rows):
        for idx, val in entries.items():
            X[i, idx - 1] = val
    return Dataset(X, encode_labels(labels), name or path.stem)


def save_libsvm(data: Dataset, path, header: Sequence[str] = ()) -> None:
    with open(path, "w") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for label, row in zip(data.y, data.X):
            nz = np.flatnonzero(row)
            feats = " ".join(f"{j + 1}:{row[j]:.17g}" for j in nz)
            fh.write(f"{int(label)} {feats}".rstrip() + "\n")


def load_csv(path, label_column: str, name: str | None = None) -> Dataset:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#"))
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, header row expected") from None
        header = [h.strip() for h in header]
        if label_column not in header:
            raise ValueError(f"{path}: label column {label_column!r} not in header {header}")
        li = header.index(label_column)
        labels, rows = [], []
        for rowno, row in enumerate(reader, 2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}: row {rowno} has {len(row)} fields, header has {len(header)}")
            try:
                vals = [float(c) for c in row]
            except ValueError:
                raise ValueError(f"{path}: row {rowno} has a non-numeric field") from None
            labels.append(vals[li])
            rows.append(vals[:li] + vals[li + 1:])
    if not rows:
        raise ValueError(f"{path}: no data rows")
    if len(header) < 2:
        raise ValueError(f"{path}: no feature columns")
    return Dataset(np.array(rows), encode_labels(labels), name or path.stem)


def load_dataset(path, fmt: str | None = None, label_column: str = "label") -> Dataset:
    fmt = fmt or ("csv" if str(path).lower().endswith(".csv") else "libsvm")
    if fmt == "csv":
        return load_csv(path, label_column)
    if fmt == "libsvm":
        return load_libsvm(path)
    raise ValueError(f"unknown dataset format {fmt!r}")


def _hyper(result, key):
    v = result.chosen_hyper.get(key)
    return "" if v is None else f"{v:g}"


def report_rows(results: Iterable) -> list[list[str]]:
    return [[r.dataset, r.method, r.p, f"{r.accuracy:.2f}", f"{r.train_seconds:.6f}",
             f"{r.gridsearch_seconds:.6f}", _hyper(r, "C"), _hyper(r, "gamma"), _hyper(r, "q"), str(r.seed)]
            for r in results]


def render_markdown(results: Sequence) -> str:
    """Datasets as rows, methods as columns, accuracies to two decimals."""
    methods = list(dict.fromkeys(r.method for r in results))
    datasets = list(dict.fromkeys(r.dataset for r in results))
    cells = {(r.dataset, r.method): f"{r.accuracy:.2f}" for r in results}
    lines = ["| Dataset | " + " | ".join(methods) + " |", "|---" * (len(methods) + 1) + "|"]
    for ds in datasets:
        lines.append(f"| {ds} | " + " | ".join(cells.get((ds, m), "") for m in methods) + " |")
    return "\n".join(lines) + "\n"


def write_report(results: Sequence, path, markdown_path=None, header: Sequence[str] = ()) -> None:
    """CSV report (``#`` comment lines first) plus an optional markdown table."""
    results = list(results)
    with open(path, "w", newline="") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        writer.writerows(report_rows(results))
    if markdown_path is not None:
        with open(markdown_path, "w") as fh:
            for line in header:
                fh.write(f"<!-- {line} -->\n")
            fh.write(render_markdown(results))


def read_report(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))
