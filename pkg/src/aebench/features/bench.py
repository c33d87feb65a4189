"""Feature-tracking benchmark over the frames a controller produced.

For every consecutive frame pair the number of matches is counted, and the
grid uniformity of the first frame's keypoints is recorded. Trajectories of
one controller are then summarized by quartiles and a success curve.
"""

import csv
import io
import logging

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from aebench.emulation import saturation_stats
from aebench.photometry import RawImage

from .detect import detect_keypoints
from .match import match_features
from .metrics import DEFAULT_TAUS, grid_uniformity, success_curve
from .model import DetectorOptions, Keypoint, MatcherOptions, SuccessCurve

LOG = logging.getLogger(__name__)

TAU_MARKER = 5
"""Fewest matches usable for motion estimation, highlighted in reports."""


@dataclass
class TrajectoryFeatures:
    name: str
    match_counts: list[int]
    """Matches per consecutive frame pair."""

    uniformity_pct: list[float]
    """Grid uniformity of the first frame of each pair."""

    keypoint_counts: list[int] = field(default_factory=list[int])
    mean_saturation: float = 0.0


@dataclass
class Distribution:
    median: float
    q1: float
    q3: float
    minimum: float
    maximum: float

    @staticmethod
    def of(values: Sequence[float]) -> "Distribution":
        if len(values) == 0:
            raise ValueError("Cannot summarize an empty set of values")
        v = np.asarray(values, dtype=np.float64)
        q1, median, q3 = np.percentile(v, [25.0, 50.0, 75.0])
        return Distribution(float(median), float(q1), float(q3), float(v.min()), float(v.max()))


@dataclass
class ControllerFeatureSummary:
    controller: str
    trajectories: int
    matches: Distribution
    uniformity_pct: Distribution
    success: SuccessCurve
    mean_saturation: float


def evaluate_frames(
    frames: Sequence[RawImage],
    name: str = "",
    detector: DetectorOptions = DetectorOptions(),
    matcher: MatcherOptions = MatcherOptions(),
) -> TrajectoryFeatures:
    """Detect in every frame and match every consecutive pair."""
    if len(frames) < 2:
        raise ValueError(f"Feature evaluation needs at least 2 frames, got {len(frames)}")

    keypoints: list[list[Keypoint]] = [detect_keypoints(f, options=detector) for f in frames]
    counts: list[int] = []
    uniformity: list[float] = []
    for k in range(len(frames) - 1):
        a, b = frames[k], frames[k + 1]
        counts.append(match_features(a, keypoints[k], b, keypoints[k + 1], matcher).count)
        uniformity.append(grid_uniformity(keypoints[k], a.width, a.height))

    saturation = float(np.mean([saturation_stats(f).fraction for f in frames]))
    LOG.info(f"{name or 'trajectory'}: median {np.median(counts):.0f} matches over {len(counts)} frame pairs")
    return TrajectoryFeatures(name, counts, uniformity, [len(k) for k in keypoints], saturation)


def trajectory_csv(features: TrajectoryFeatures) -> str:
    """Columns: frame_pair, matches, uniformity_pct_A."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["frame_pair", "matches", "uniformity_pct_A"])
    for k, (m, u) in enumerate(zip(features.match_counts, features.uniformity_pct)):
        writer.writerow([k, m, f"{u:.2f}"])
    return buf.getvalue()


def summarize_controller(
    controller: str, trajectories: Sequence[TrajectoryFeatures], taus: Sequence[int] = DEFAULT_TAUS
) -> ControllerFeatureSummary:
    if len(trajectories) == 0:
        raise ValueError(f"No trajectories to summarize for controller {controller}")
    matches = [float(c) for t in trajectories for c in t.match_counts]
    uniformity = [u for t in trajectories for u in t.uniformity_pct]
    return ControllerFeatureSummary(
        controller=controller,
        trajectories=len(trajectories),
        matches=Distribution.of(matches),
        uniformity_pct=Distribution.of(uniformity),
        success=success_curve([t.match_counts for t in trajectories], taus),
        mean_saturation=float(np.mean([t.mean_saturation for t in trajectories])),
    )


def features_json(summaries: Sequence[ControllerFeatureSummary], tau_marker: int = TAU_MARKER) -> dict[str, Any]:
    """Aggregate report keyed by controller name."""
    out: dict[str, Any] = {"tau_marker": tau_marker, "controllers": {}}
    for s in summaries:
        rates = dict(zip(s.success.thresholds, s.success.success_rate))
        out["controllers"][s.controller] = {
            "trajectories": s.trajectories,
            "matches": vars(s.matches),
            "uniformity_pct": vars(s.uniformity_pct),
            "mean_saturation": s.mean_saturation,
            "success_curve": {"tau": s.success.thresholds, "success_rate": s.success.success_rate},
            "success_rate_at_marker": rates.get(tau_marker),
        }
    return out
