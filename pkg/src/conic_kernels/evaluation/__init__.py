from .methods import Config, Fitted, Method, build_map, fit_method, parse_anchor_strategy, parse_method
from .protocol import (DEFAULT_GRID_C, DEFAULT_GRID_GAMMA, DEFAULT_GRID_Q, BenchmarkResult, ExperimentPlan,
                       FoldOutcome, accuracy, grid_search, run_benchmark, run_fold, timed_fit)
from .scaling import ScalerState, apply_scaler, fit_scaler
from .splits import holdout_split, stratified_kfold

__all__ = [
    "BenchmarkResult", "Config", "DEFAULT_GRID_C", "DEFAULT_GRID_GAMMA", "DEFAULT_GRID_Q", "ExperimentPlan",
    "Fitted", "FoldOutcome", "Method", "ScalerState", "accuracy", "apply_scaler", "build_map", "fit_method",
    "fit_scaler", "grid_search", "holdout_split", "parse_anchor_strategy", "parse_method", "run_benchmark",
    "run_fold", "stratified_kfold", "timed_fit",
]
