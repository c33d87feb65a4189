from .model import DetectorOptions, Keypoint, MatcherOptions, MatchSet, SuccessCurve
from .detect import corner_response, detect_keypoints
from .match import eligible_keypoints, match_features
from .metrics import DEFAULT_TAUS, GRID_CELLS, grid_uniformity, sequence_success, success_curve
from .bench import (
    TAU_MARKER,
    ControllerFeatureSummary,
    Distribution,
    TrajectoryFeatures,
    evaluate_frames,
    features_json,
    summarize_controller,
    trajectory_csv,
)
from .plots import plot_features

__all__ = [
    "DEFAULT_TAUS",
    "GRID_CELLS",
    "TAU_MARKER",
    "ControllerFeatureSummary",
    "DetectorOptions",
    "Distribution",
    "Keypoint",
    "MatchSet",
    "MatcherOptions",
    "SuccessCurve",
    "TrajectoryFeatures",
    "corner_response",
    "detect_keypoints",
    "eligible_keypoints",
    "evaluate_frames",
    "features_json",
    "grid_uniformity",
    "match_features",
    "plot_features",
    "sequence_success",
    "success_curve",
    "summarize_controller",
    "trajectory_csv",
]
