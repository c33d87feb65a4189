from .model import (
    FloatArray,
    Intrinsics,
    PoseSE3,
    RPEReport,
    RPESegment,
    Trajectory,
    TrajectoryFormatError,
)
from .geometry import (
    MIN_CORRESPONDENCES,
    DegenerateGeometryError,
    EssentialEstimate,
    InsufficientCorrespondencesError,
    PlanarMotion,
    RansacOptions,
    eight_point,
    estimate_essential,
    estimate_planar_motion,
    estimate_relative_pose,
    project_essential,
    sampson_residuals,
)
from .odometry import MotionModel, OdometryOptions, OdometryResult, compose_trajectory, run_visual_odometry
from .align import (
    DEFAULT_MAX_GAP_NS,
    AlignmentInsufficientError,
    RankDeficiencyError,
    SimilarityAlignment,
    align_similarity,
    associate,
    umeyama,
)
from .rpe import (
    DEFAULT_SEGMENT_LENGTHS,
    RPEOptions,
    SegmentErrors,
    pooled_relative_pose_error,
    relative_pose_error,
    rpe_csv,
    rpe_json,
    rpe_json_text,
    segment_errors,
)
from .io import load_trajectory, save_trajectory, trajectory_from_text, trajectory_to_text
from .bench import ControllerRPESummary, VORun, evaluate_vo, summarize_vo, vo_json

__all__ = [
    "DEFAULT_MAX_GAP_NS",
    "DEFAULT_SEGMENT_LENGTHS",
    "MIN_CORRESPONDENCES",
    "AlignmentInsufficientError",
    "ControllerRPESummary",
    "DegenerateGeometryError",
    "EssentialEstimate",
    "FloatArray",
    "InsufficientCorrespondencesError",
    "Intrinsics",
    "MotionModel",
    "OdometryOptions",
    "OdometryResult",
    "PlanarMotion",
    "PoseSE3",
    "RPEOptions",
    "SegmentErrors",
    "RPEReport",
    "RPESegment",
    "RankDeficiencyError",
    "RansacOptions",
    "SimilarityAlignment",
    "Trajectory",
    "TrajectoryFormatError",
    "VORun",
    "align_similarity",
    "associate",
    "compose_trajectory",
    "eight_point",
    "estimate_essential",
    "estimate_planar_motion",
    "estimate_relative_pose",
    "evaluate_vo",
    "load_trajectory",
    "pooled_relative_pose_error",
    "project_essential",
    "relative_pose_error",
    "rpe_csv",
    "rpe_json",
    "rpe_json_text",
    "run_visual_odometry",
    "sampson_residuals",
    "save_trajectory",
    "segment_errors",
    "summarize_vo",
    "trajectory_from_text",
    "trajectory_to_text",
    "umeyama",
    "vo_json",
]
