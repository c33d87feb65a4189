"""Relative pose error over fixed travelled distances.

For each start pose `i` and segment length `d`, the end pose `j` is the one
whose accumulated reference path length from `i` is closest to `d`; pairs
farther than the tolerance from `d` are skipped. The error pose is

    E = (Q_i^-1 Q_j)^-1 (P_i^-1 P_j)

with `Q` the reference and `P` the estimate. Translation errors are reported
in percent of `d`, rotation errors in degrees per meter.
"""

import csv
import io
import json
import logging

from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

import numpy as np

from scipy.spatial.transform import Rotation

from .align import DEFAULT_MAX_GAP_NS, associate
from .model import FloatArray, RPEReport, RPESegment, Trajectory

LOG = logging.getLogger(__name__)

DEFAULT_SEGMENT_LENGTHS: list[float] = [0.5, 1.0, 2.0, 4.0]


@dataclass(frozen=True)
class RPEOptions:
    segment_lengths: list[float] = field(default_factory=lambda: list(DEFAULT_SEGMENT_LENGTHS))
    """Travelled distances (meters) to evaluate."""

    tolerance: float = 0.2
    """Accept an end pose whose path length is within this fraction of the segment length."""

    max_gap_ns: int = DEFAULT_MAX_GAP_NS
    """Largest timestamp difference of associated poses."""


@dataclass
class SegmentErrors:
    translation_pct: list[float] = field(default_factory=list[float])
    rotation_deg_per_m: list[float] = field(default_factory=list[float])


def _relative(rot: Rotation, pos: FloatArray, i: int, j: int) -> tuple[Rotation, FloatArray]:
    ri = rot[i]
    return ri.inv() * rot[j], ri.inv().apply(pos[j] - pos[i])


def _lengths(segment_lengths: Sequence[float] | None, options: RPEOptions) -> list[float]:
    lengths = list(options.segment_lengths if segment_lengths is None else segment_lengths)
    for d in lengths:
        if not d > 0.0:
            raise ValueError(f"Segment lengths must be positive, got {d}")
    return lengths


def segment_errors(
    est: Trajectory, ref: Trajectory, lengths: Sequence[float], options: RPEOptions = RPEOptions()
) -> dict[float, SegmentErrors]:
    """Every translation (percent) and rotation (deg/m) error per segment length."""
    errors = {d: SegmentErrors() for d in lengths}
    pairs = associate(est, ref, options.max_gap_ns)
    if len(pairs) < 2:
        LOG.warning(f"Only {len(pairs)} associated poses, no relative pose error can be computed")
        return errors

    p_rot = Rotation.from_matrix(np.stack([est.poses[i].rotation for i, _ in pairs]))
    p_pos = np.stack([est.poses[i].translation for i, _ in pairs])
    q_rot = Rotation.from_matrix(np.stack([ref.poses[j].rotation for _, j in pairs]))
    q_pos = np.stack([ref.poses[j].translation for _, j in pairs])

    steps = np.linalg.norm(np.diff(q_pos, axis=0), axis=1)
    travelled = np.concatenate([[0.0], np.cumsum(steps)])
    n = len(pairs)

    for d in lengths:
        for i in range(n - 1):
            target = travelled[i] + d
            k = int(np.searchsorted(travelled, target))
            candidates = [c for c in (k - 1, k) if i < c < n]
            if len(candidates) == 0:
                continue
            j = min(candidates, key=lambda c: abs(travelled[c] - target))
            if abs(travelled[j] - target) > options.tolerance * d:
                continue

            q_r, q_t = _relative(q_rot, q_pos, i, j)
            p_r, p_t = _relative(p_rot, p_pos, i, j)
            e_r = q_r.inv() * p_r
            e_t = q_r.inv().apply(p_t - q_t)
            errors[d].translation_pct.append(float(np.linalg.norm(e_t)) / d * 100.0)
            errors[d].rotation_deg_per_m.append(float(np.degrees(e_r.magnitude())) / d)

    return errors


def _report(errors: dict[float, SegmentErrors]) -> RPEReport:
    report = RPEReport()
    for d, e in errors.items():
        if len(e.translation_pct) == 0:
            report.omitted_lengths.append(d)
            continue
        report.segments.append(
            RPESegment(
                d, len(e.translation_pct), float(np.median(e.translation_pct)), float(np.median(e.rotation_deg_per_m))
            )
        )

    for s in report.segments:
        LOG.info(
            f"RPE over {s.length_m:g} m ({s.pair_count} pairs): {s.median_translation_pct:.2f} %, "
            f"{s.median_rotation_deg_per_m:.4f} deg/m"
        )
    return report


def relative_pose_error(
    est: Trajectory,
    ref: Trajectory,
    segment_lengths: Sequence[float] | None = None,
    options: RPEOptions = RPEOptions(),
) -> RPEReport:
    """Median relative pose errors of `est` against `ref` per segment length.

    Both trajectories are expected in the same frame and scale (see
    `align_similarity`). Lengths that no pose pair reaches are listed in
    `RPEReport.omitted_lengths`.
    """
    return _report(segment_errors(est, ref, _lengths(segment_lengths, options), options))


def pooled_relative_pose_error(
    runs: Sequence[tuple[Trajectory, Trajectory]],
    segment_lengths: Sequence[float] | None = None,
    options: RPEOptions = RPEOptions(),
) -> RPEReport:
    """Medians over the errors of all (estimate, reference) pairs together."""
    lengths = _lengths(segment_lengths, options)
    pooled = {d: SegmentErrors() for d in lengths}
    for est, ref in runs:
        for d, e in segment_errors(est, ref, lengths, options).items():
            pooled[d].translation_pct += e.translation_pct
            pooled[d].rotation_deg_per_m += e.rotation_deg_per_m
    return _report(pooled)


def rpe_csv(report: RPEReport) -> str:
    """One row per evaluated segment length."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["length_m", "pairs", "median_translation_pct", "median_rotation_deg_per_m"])
    for s in report.segments:
        writer.writerow(
            [repr(s.length_m), s.pair_count, f"{s.median_translation_pct:.6f}", f"{s.median_rotation_deg_per_m:.6f}"]
        )
    return buf.getvalue()


def rpe_json(report: RPEReport) -> dict[str, Any]:
    return asdict(report)


def rpe_json_text(report: RPEReport) -> str:
    return json.dumps(rpe_json(report), indent=2, sort_keys=True) + "\n"
