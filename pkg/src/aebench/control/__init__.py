from .config import AEConfig, KimOptions, ShimOptions, TargetBrightnessOptions, ZhangOptions
from .metrics import (
    gradient_magnitude,
    kim_metric,
    mean_brightness,
    normalized_entropy,
    percentile_weighted_gradient,
    shaped_gradient_mean,
    shim_gradient_metric,
    zhang_metric,
)
from .gp import GaussianProcess
from .controllers import (
    ALL_CONTROLLERS,
    AEController,
    AEDecision,
    ControllerKind,
    FixedController,
    KimController,
    ShimController,
    TargetBrightnessController,
    ZhangController,
    make_controller,
)
from .runner import RUN_HEADER, ControlStep, RunStatistics, frames_of, run_controller, run_csv, runs_summary

__all__ = [
    "ALL_CONTROLLERS",
    "RUN_HEADER",
    "AEConfig",
    "AEController",
    "AEDecision",
    "ControlStep",
    "ControllerKind",
    "RunStatistics",
    "FixedController",
    "GaussianProcess",
    "KimController",
    "KimOptions",
    "ShimController",
    "ShimOptions",
    "TargetBrightnessController",
    "TargetBrightnessOptions",
    "ZhangController",
    "ZhangOptions",
    "frames_of",
    "gradient_magnitude",
    "kim_metric",
    "make_controller",
    "mean_brightness",
    "normalized_entropy",
    "percentile_weighted_gradient",
    "run_controller",
    "run_csv",
    "runs_summary",
    "shaped_gradient_mean",
    "shim_gradient_metric",
    "zhang_metric",
]
