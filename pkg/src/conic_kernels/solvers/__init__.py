from .linear import (ConvergenceWarning, LinearModel, SvmHyper, linear_dual_objective, predict_linear,
                     train_linear_svm, warmup)
from .primal import recover_primal_weights
from .serialize import dumps, load_model, loads, save_model
from .smo import KernelModel, kernel_dual_objective, predict_kernel, train_kernel_svm

__all__ = [
    "ConvergenceWarning", "KernelModel", "LinearModel", "SvmHyper", "dumps", "kernel_dual_objective",
    "linear_dual_objective", "load_model", "loads", "predict_kernel", "predict_linear", "recover_primal_weights",
    "save_model", "train_kernel_svm", "train_linear_svm", "warmup",
]
