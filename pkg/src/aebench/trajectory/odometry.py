"""Frame-to-frame monocular visual odometry.

Each consecutive frame pair is matched and two motion models are fitted: a
translation-only image motion (a camera moving parallel to a plane, where the
essential matrix is degenerate) and the general essential-matrix model. The
planar model is kept when it explains enough of the matches. Tracking stops at
the first pair that cannot be estimated.
"""

import logging

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Optional, Sequence

import numpy as np

from aebench.features import DetectorOptions, Keypoint, MatcherOptions, detect_keypoints, match_features
from aebench.photometry import RawImage

from .geometry import (
    MIN_CORRESPONDENCES,
    DegenerateGeometryError,
    InsufficientCorrespondencesError,
    RansacOptions,
    estimate_planar_motion,
    estimate_relative_pose,
)
from .model import Intrinsics, PoseSE3, Trajectory

LOG = logging.getLogger(__name__)


class MotionModel(StrEnum):
    PLANAR = "planar"
    ESSENTIAL = "essential"


@dataclass(frozen=True)
class OdometryOptions:
    detector: DetectorOptions = DetectorOptions()
    matcher: MatcherOptions = MatcherOptions()
    ransac: RansacOptions = RansacOptions()
    planar_inlier_ratio: float = 0.9
    """Use the translation-only model when at least this fraction of matches agree with it."""


@dataclass
class OdometryResult:
    relative_poses: list[PoseSE3] = field(default_factory=list[PoseSE3])
    match_counts: list[int] = field(default_factory=list[int])
    models: list[MotionModel] = field(default_factory=list[MotionModel])
    failed_pair: Optional[int] = None
    """Index of the first frame pair that could not be estimated."""

    failure: Optional[str] = None
    trajectory: Optional[Trajectory] = None
    """The composed trajectory, only when every pair was estimated."""

    @property
    def converged(self) -> bool:
        return self.failed_pair is None


def compose_trajectory(relative_poses: Sequence[PoseSE3], timestamps: Sequence[int]) -> Trajectory:
    """Chain relative poses from the identity: `P_0 = I`, `P_k+1 = P_k * rel_k`."""
    if len(relative_poses) == 0:
        raise ValueError("Cannot compose an empty list of relative poses")
    if len(timestamps) != len(relative_poses) + 1:
        raise ValueError(f"Expected {len(relative_poses) + 1} timestamps, got {len(timestamps)}")

    poses = [PoseSE3.identity(int(timestamps[0]))]
    for rel, ts in zip(relative_poses, timestamps[1:]):
        step = poses[-1].compose(rel)
        poses.append(PoseSE3(step.rotation, step.translation, int(ts)))
    return Trajectory(poses)


def _pose_from_matches(
    kps_a: Sequence[Keypoint],
    kps_b: Sequence[Keypoint],
    pairs: Sequence[tuple[int, int]],
    intrinsics: Intrinsics,
    options: OdometryOptions,
) -> tuple[PoseSE3, MotionModel]:
    pa = np.asarray([(kps_a[i].x, kps_a[i].y) for i, _ in pairs], dtype=np.float64)
    pb = np.asarray([(kps_b[j].x, kps_b[j].y) for _, j in pairs], dtype=np.float64)

    planar = estimate_planar_motion(pa, pb, intrinsics, options.ransac.threshold_px)
    if planar.inlier_ratio >= options.planar_inlier_ratio:
        return planar.pose, MotionModel.PLANAR
    return estimate_relative_pose(pa, pb, intrinsics, options.ransac), MotionModel.ESSENTIAL


def run_visual_odometry(
    frames: Sequence[RawImage], intrinsics: Intrinsics, options: OdometryOptions = OdometryOptions()
) -> OdometryResult:
    """Estimate camera motion over `frames`; timestamps come from the frames."""
    if len(frames) < 2:
        raise ValueError(f"Visual odometry needs at least 2 frames, got {len(frames)}")

    result = OdometryResult()
    keypoints = detect_keypoints(frames[0], options=options.detector)
    for k in range(len(frames) - 1):
        next_keypoints = detect_keypoints(frames[k + 1], options=options.detector)
        matches = match_features(frames[k], keypoints, frames[k + 1], next_keypoints, options.matcher)
        result.match_counts.append(matches.count)

        try:
            if matches.count < MIN_CORRESPONDENCES:
                raise InsufficientCorrespondencesError(
                    f"{matches.count} matches, at least {MIN_CORRESPONDENCES} are needed"
                )
            pose, model = _pose_from_matches(keypoints, next_keypoints, matches.pairs, intrinsics, options)
        except (InsufficientCorrespondencesError, DegenerateGeometryError) as e:
            result.failed_pair = k
            result.failure = str(e)
            LOG.info(f"Tracking lost at frame pair {k}: {e}")
            return result

        result.relative_poses.append(pose)
        result.models.append(model)
        keypoints = next_keypoints

    result.trajectory = compose_trajectory(result.relative_poses, [f.timestamp for f in frames])
    LOG.info(f"Tracked {len(frames)} frames, {result.models.count(MotionModel.PLANAR)} pairs with the planar model")
    return result
