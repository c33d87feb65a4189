"""Visual-odometry benchmark over the frames a controller produced.

Each run is tracked, aligned to its reference with a similarity transform and
scored by relative pose error. Errors of all converged runs of a controller
are pooled; runs where tracking was lost count towards the failure rate.
"""

import logging

from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Sequence

from aebench.photometry import RawImage

from .align import AlignmentInsufficientError, RankDeficiencyError, SimilarityAlignment, align_similarity
from .model import Intrinsics, RPEReport, Trajectory
from .odometry import OdometryOptions, OdometryResult, run_visual_odometry
from .rpe import RPEOptions, pooled_relative_pose_error

LOG = logging.getLogger(__name__)


@dataclass(eq=False)
class VORun:
    name: str
    odometry: OdometryResult
    reference: Trajectory
    alignment: Optional[SimilarityAlignment] = None
    failure: Optional[str] = None

    @property
    def converged(self) -> bool:
        return self.alignment is not None


@dataclass(eq=False)
class ControllerRPESummary:
    controller: str
    runs: list[VORun] = field(default_factory=list[VORun])
    report: RPEReport = field(default_factory=RPEReport)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.runs if not r.converged)

    @property
    def failure_rate(self) -> float:
        return self.failures / len(self.runs) if len(self.runs) > 0 else 0.0


def evaluate_vo(
    frames: Sequence[RawImage],
    reference: Trajectory,
    intrinsics: Intrinsics,
    odometry: OdometryOptions = OdometryOptions(),
    rpe: RPEOptions = RPEOptions(),
    name: str = "",
) -> VORun:
    """Track `frames` and align the estimate to `reference`."""
    result = run_visual_odometry(frames, intrinsics, odometry)
    run = VORun(name, result, reference)
    if result.trajectory is None:
        run.failure = f"tracking lost at frame pair {result.failed_pair}: {result.failure}"
        return run

    try:
        run.alignment = align_similarity(result.trajectory, reference, rpe.max_gap_ns)
    except (AlignmentInsufficientError, RankDeficiencyError) as e:
        run.failure = f"alignment failed: {e}"
        LOG.info(f"{name or 'trajectory'}: {run.failure}")
    return run


def summarize_vo(controller: str, runs: Sequence[VORun], rpe: RPEOptions = RPEOptions()) -> ControllerRPESummary:
    """Pool the relative pose errors of every converged run."""
    aligned = [(r.alignment.aligned, r.reference) for r in runs if r.alignment is not None]
    summary = ControllerRPESummary(controller, list(runs))
    if len(aligned) > 0:
        summary.report = pooled_relative_pose_error(aligned, options=rpe)
    else:
        summary.report = RPEReport(omitted_lengths=list(rpe.segment_lengths))

    LOG.info(f"{controller}: {summary.failures} of {len(runs)} trajectories failed")
    return summary


def vo_json(summaries: Sequence[ControllerRPESummary]) -> dict[str, Any]:
    """Aggregate report keyed by controller name."""
    out: dict[str, Any] = {"controllers": {}}
    for s in summaries:
        out["controllers"][s.controller] = {
            "trajectories": len(s.runs),
            "failures": s.failures,
            "failure_rate": s.failure_rate,
            "failed": {r.name: r.failure for r in s.runs if not r.converged},
            "segments": [asdict(seg) for seg in s.report.segments],
            "omitted_lengths": s.report.omitted_lengths,
        }
    return out
