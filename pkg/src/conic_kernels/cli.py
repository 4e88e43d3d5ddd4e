"""Command-line entry point: ``bench``, ``separability``, ``approx-compare``, ``map``.

Exit codes: 0 success, 1 negative analytical result (not separable),
2 usage or data error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .anchors import class_kmeans, class_means, filtered_sample_anchors, global_mean
from .core import Dataset, NormExponent
from .data_io import load_dataset, save_libsvm, write_report
from .evaluation import ExperimentPlan, apply_scaler, build_map, fit_scaler, parse_anchor_strategy, parse_method
from .evaluation.protocol import DEFAULT_GRID_C, DEFAULT_GRID_GAMMA, DEFAULT_GRID_Q, run_benchmark
from .feature_maps import load_anchors, map_dataset
from .separability import check_coordinatewise, check_multi_anchor, check_single_anchor
from .solvers import ConvergenceWarning

DEFAULT_SEED = 42
DEFAULT_DIMS = (2, 8, 16, 64, 256, 1024)


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("CONIC_KERNELS_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"CONIC_KERNELS_SEED must be an integer, got {raw!r}")


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _paths(text: str) -> list[str]:
    return [v for v in text.split(",") if v]


def _add_data_args(parser, multiple=False):
    parser.add_argument("--data", required=True, type=_paths if multiple else str,
                        help="dataset path" + ("(s), comma-separated" if multiple else ""))
    parser.add_argument("--format", choices=["libsvm", "csv"], default=None,
                        help="input format (default: by extension, libsvm otherwise)")
    parser.add_argument("--label-column", default="label", help="label column for CSV input")


def _add_common(parser):
    parser.add_argument("--p", default="2", help="norm exponent for phi_p_* methods: 1, 2 or inf")
    parser.add_argument("--anchors", default="mean",
                        help="mean | class-means | kmeans:<k> | filtered:<q> | file:<path>")
    parser.add_argument("--seed", type=int, default=default_seed())
    parser.add_argument("--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conic-kernels", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="accuracy/timing benchmark over datasets x methods")
    _add_data_args(bench, multiple=True)
    bench.add_argument("--test-data", type=_paths, default=None,
                       help="provided test split(s), aligned with --data")
    bench.add_argument("--methods", default="lin,phi_1_1,phi_2_1,phi_1_d,phi_2_d,pol,rbf")
    _add_common(bench)
    split = bench.add_mutually_exclusive_group()
    split.add_argument("--folds", type=int, default=None)
    split.add_argument("--holdout", type=float, default=None, metavar="FRACTION")
    bench.add_argument("--grid-C", type=_floats, default=DEFAULT_GRID_C)
    bench.add_argument("--grid-gamma", type=_floats, default=DEFAULT_GRID_GAMMA)
    bench.add_argument("--grid-q", type=_ints, default=DEFAULT_GRID_Q)
    bench.add_argument("--approx-dim", type=int, default=100, help="transformed dimension for rff/nystrom")
    bench.add_argument("--tol", type=float, default=1e-4)
    bench.add_argument("--max-iter", type=int, default=None)
    bench.add_argument("--no-scale", action="store_true")
    bench.add_argument("--out", default="report.csv")
    bench.add_argument("--markdown", default=None)
    bench.add_argument("--sequential", action="store_true", help="run cells serially (timing-grade)")
    bench.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    sep = sub.add_parser("separability", help="check the conic separability conditions")
    _add_data_args(sep)
    _add_common(sep)
    sep.add_argument("--check", choices=["auto", "single", "coordinatewise", "multi"], default="auto")
    sep.add_argument("--anchor-class", type=int, choices=[-1, 1], default=None,
                     help="keep only the anchors built from this class")
    sep.add_argument("--scale", action="store_true", help="standardise features first")

    ap = sub.add_parser("approx-compare", help="RFF/Nystroem sweep against conic maps")
    _add_data_args(ap)
    ap.add_argument("--test-data", default=None)
    ap.add_argument("--dims", type=_ints, default=DEFAULT_DIMS)
    ap.add_argument("--C", type=float, default=1.0)
    ap.add_argument("--gamma", type=float, default=0.2)
    ap.add_argument("--seed", type=int, default=default_seed())
    split = ap.add_mutually_exclusive_group()
    split.add_argument("--folds", type=int, default=None)
    split.add_argument("--holdout", type=float, default=None, metavar="FRACTION")
    ap.add_argument("--out", default="approx_compare.csv")
    ap.add_argument("--verbose", action="store_true")

    mp = sub.add_parser("map", help="write a dataset mapped by a conic feature map (libsvm text)")
    _add_data_args(mp)
    mp.add_argument("--method", default="phi_1_1", help="lin or phi_<p>_<1|d|2|m>")
    _add_common(mp)
    mp.add_argument("--scale", action="store_true", help="standardise features before mapping")
    mp.add_argument("--out", required=True)
    return parser


def _header(args, command: str) -> list[str]:
    skip = {"func"}
    cfg = " ".join(f"{k}={_fmt_arg(v)}" for k, v in sorted(vars(args).items()) if k not in skip)
    return [f"conic-kernels {__version__} numpy {np.__version__}", f"command: {command}", f"config: {cfg}",
            f"seed: {args.seed}"]


def _fmt_arg(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(f"{x:g}" if isinstance(x, float) else str(x) for x in v)
    return str(v)


def _load(path, args) -> Dataset:
    return load_dataset(path, args.format, args.label_column)


# ----------------------------------------------------------------- bench


def _bench_cell(job):
    path, test_path, fmt, label_column, plan = job
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        data = load_dataset(path, fmt, label_column)
        test = load_dataset(test_path, fmt, label_column) if test_path else None
        if test is not None and test.d != data.d:
            # libsvm test files may omit trailing all-zero features
            d = max(test.d, data.d)
            data = data.with_features(np.pad(data.X, ((0, 0), (0, d - data.d))))
            test = test.with_features(np.pad(test.X, ((0, 0), (0, d - test.d))))
        return run_benchmark(data, plan, test)


def cmd_bench(args) -> int:
    methods = [m for m in args.methods.split(",") if m]
    try:
        for m in methods:
            parse_method(m, args.p)
        NormExponent.parse(args.p)
        parse_anchor_strategy(args.anchors)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.test_data is not None and len(args.test_data) != len(args.data):
        raise UsageError("--test-data must list one file per --data entry")
    if args.test_data is not None:
        mode = "test"
    elif args.holdout is not None:
        mode = "holdout"
    else:
        mode = "kfold"
    jobs = []
    for i, path in enumerate(args.data):
        test_path = args.test_data[i] if args.test_data else None
        for m in methods:
            plan = ExperimentPlan(method=m, p=args.p, grid_C=args.grid_C, grid_gamma=args.grid_gamma,
                                  grid_q=args.grid_q, mode=mode, folds=args.folds or 10,
                                  train_fraction=args.holdout or 0.7, seed=args.seed, anchors=args.anchors,
                                  scale=not args.no_scale, approx_dim=args.approx_dim, tol=args.tol,
                                  max_iter=args.max_iter)
            jobs.append((path, test_path, args.format, args.label_column, plan))

    results, failures = [], 0
    if args.sequential or args.workers <= 1 or len(jobs) == 1:
        outcomes = []
        for job in jobs:
            try:
                outcomes.append(_bench_cell(job))
            except Exception as exc:  # noqa: BLE001 - one failed cell must not stop the rest
                outcomes.append(exc)
    else:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            futures = [pool.submit(_bench_cell, job) for job in jobs]
            outcomes = []
            for fut in futures:
                try:
                    outcomes.append(fut.result())
                except Exception as exc:  # noqa: BLE001
                    outcomes.append(exc)
    for job, out in zip(jobs, outcomes):
        if isinstance(out, Exception):
            failures += 1
            print(f"error: {job[0]} / {job[4].method}: {out}", file=sys.stderr)
            continue
        results.append(out)
        line = f"{out.dataset:<16} {out.method:<12} acc={out.accuracy:6.2f} train={out.train_seconds:.3f}s"
        if args.verbose:
            line += f" grid={out.gridsearch_seconds:.3f}s hyper={out.chosen_hyper} folds={out.fold_accuracies}"
        print(line)
    write_report(results, args.out, args.markdown, header=_header(args, "bench"))
    print(f"seed: {args.seed}")
    print(f"wrote {args.out}" + (f" and {args.markdown}" if args.markdown else ""))
    return 2 if failures else 0


# ---------------------------------------------------------- separability


def _anchor_sets_for(args, data: Dataset, scaler=None) -> list[np.ndarray]:
    kind, arg = parse_anchor_strategy(args.anchors)
    p = NormExponent.parse(args.p)
    if kind == "mean":
        return [global_mean(data)]
    if kind == "file":
        A = load_anchors(arg)
        if A.shape[1] != data.d:
            raise ValueError(f"anchor file has dimension {A.shape[1]}, data has {data.d}")
        return [scaler.transform(A) if scaler is not None else A]
    if kind == "class-means":
        return class_means(data)
    if kind == "kmeans":
        return class_kmeans(data, arg, seed=args.seed)
    return filtered_sample_anchors(data, arg, p)


def cmd_separability(args) -> int:
    data = _load(args.data, args)
    if not data.is_binary:
        raise ValueError(f"separability checks need a binary dataset; {args.data} has {data.classes.size} classes")
    scaler = None
    if args.scale:
        scaler = fit_scaler(data)
        data = apply_scaler(scaler, data)
    sets = _anchor_sets_for(args, data, scaler)
    if args.anchor_class is not None:
        if len(sets) != 2:
            raise ValueError("--anchor-class needs a per-class anchor strategy")
        sets = [sets[0] if args.anchor_class == -1 else sets[1]]
    A = np.vstack(sets)
    check = args.check
    if check == "auto":
        check = "single" if A.shape[0] == 1 else "multi"
    if check in ("single", "coordinatewise") and A.shape[0] != 1:
        raise ValueError(f"--check {check} needs exactly one anchor, strategy produced {A.shape[0]}")
    if check == "single":
        report = check_single_anchor(data, A[0], args.p)
    elif check == "coordinatewise":
        report = check_coordinatewise(data, A[0], args.p)
    else:
        report = check_multi_anchor(data, A, args.p)
    print(f"check: {check}")
    print(f"anchors: {A.shape[0]}")
    print(report.to_text())
    print(f"seed: {args.seed}")
    return 0 if report.separable else 1


# -------------------------------------------------------- approx-compare


def cmd_approx_compare(args) -> int:
    data = _load(args.data, args)
    test = _load(args.test_data, args) if args.test_data else None
    mode = "test" if test is not None else ("kfold" if args.folds else "holdout")
    common = dict(grid_C=(args.C,), grid_gamma=(args.gamma,), mode=mode, folds=args.folds or 10,
                  train_fraction=args.holdout or 0.7, seed=args.seed)
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        for method in ("rff", "nystrom"):
            for D in args.dims:
                plan = ExperimentPlan(method=method, approx_dim=D, **common)
                try:
                    res = run_benchmark(data, plan, test)
                except ValueError as exc:
                    if method == "nystrom" and "exceeds" in str(exc):
                        print(f"warning: skipping nystrom at D={D}: {exc}", file=sys.stderr)
                        continue
                    raise
                rows.append((method, D, res.accuracy, res.train_seconds))
        for method in ("lin", "phi_2_1", "phi_1_d"):
            res = run_benchmark(data, ExperimentPlan(method=method, **common), test)
            rows.append((res.method, res.feature_dim, res.accuracy, res.train_seconds))
    with open(args.out, "w", newline="") as fh:
        for line in _header(args, "approx-compare"):
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["method", "D", "accuracy", "train_seconds"])
        for method, D, acc, secs in rows:
            writer.writerow([method, D, f"{acc:.2f}", f"{secs:.6f}"])
    for method, D, acc, secs in rows:
        print(f"{method:<10} D={D:<6} acc={acc:6.2f} train={secs:.3f}s")
    print(f"seed: {args.seed}")
    return 0


# ------------------------------------------------------------------- map


def cmd_map(args) -> int:
    try:
        method = parse_method(args.method, args.p)
        parse_anchor_strategy(args.anchors)
    except ValueError as exc:
        raise UsageError(str(exc))
    if method.family in ("rff", "nystrom", "pol", "rbf"):
        raise UsageError(f"{args.method} has no conic explicit map to export")
    data = _load(args.data, args)
    scaler = None
    if args.scale:
        scaler = fit_scaler(data)
        data = apply_scaler(scaler, data)
    spec = build_map(method, data, args.anchors, zero_anchor=args.scale, seed=args.seed,
                     anchor_transform=scaler.transform if scaler is not None else None)
    mapped = map_dataset(spec, data)
    save_libsvm(mapped, args.out, header=_header(args, "map") + [f"dim: {mapped.d}"])
    print(f"wrote {args.out} ({mapped.m} x {mapped.d})")
    print(f"seed: {args.seed}")
    return 0


COMMANDS = {"bench": cmd_bench, "separability": cmd_separability, "approx-compare": cmd_approx_compare,
            "map": cmd_map}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
