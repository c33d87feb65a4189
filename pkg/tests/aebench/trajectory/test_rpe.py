import json

import numpy as np
import pytest

from scipy.spatial.transform import Rotation

from aebench.trajectory import (
    PoseSE3,
    RPEOptions,
    Trajectory,
    pooled_relative_pose_error,
    relative_pose_error,
    rpe_csv,
    rpe_json,
    rpe_json_text,
)

STEP_NS = 100_000_000


def _line(scale: float = 1.0, poses: int = 101) -> Trajectory:
    """A straight 10 m path in 0.1 m steps, optionally stretched by `scale`."""
    return Trajectory([PoseSE3(np.eye(3), [0.1 * k * scale, 0.0, 0.0], k * STEP_NS) for k in range(poses)])


def _helix(noise: float = 0.0, seed: int = 0) -> Trajectory:
    """A turning, climbing path; `noise` perturbs every pose."""
    rng = np.random.default_rng(seed)
    poses: list[PoseSE3] = []
    for k in range(80):
        a = 0.05 * k
        rotation = Rotation.from_euler("z", a)
        position = np.array([3.0 * np.cos(a), 3.0 * np.sin(a), 0.02 * k])
        if noise > 0.0:
            rotation = Rotation.from_rotvec(rng.normal(0.0, noise, 3)) * rotation
            position = position + rng.normal(0.0, noise, 3)
        poses.append(PoseSE3(rotation.as_matrix(), position, k * STEP_NS))
    return Trajectory(poses)


def test_identical_trajectories_have_zero_error():
    """RPE of a trajectory against itself is exactly zero at every length."""
    for traj in (_line(), _helix()):
        report = relative_pose_error(traj, traj)
        assert len(report.segments) == 4
        for s in report.segments:
            assert s.pair_count > 0
            assert s.median_translation_pct == 0.0
            assert s.median_rotation_deg_per_m == 0.0


def test_scale_drift_is_measured():
    """A 1 % scale error on every step shows up as a 1 % translation error."""
    report = relative_pose_error(_line(1.01), _line())
    for s in report.segments:
        assert s.median_translation_pct == pytest.approx(1.0, abs=0.2)
        assert s.median_rotation_deg_per_m == pytest.approx(0.0, abs=1e-9)


def test_invariant_to_rigid_transforms():
    """Moving the estimate rigidly, or both trajectories together, leaves the errors unchanged."""
    ref = _helix()
    est = _helix(noise=0.01, seed=1)
    transform = PoseSE3(Rotation.from_euler("xyz", [0.3, -1.1, 2.0]).as_matrix(), [5.0, -2.0, 7.5])

    base = relative_pose_error(est, ref)
    moved = relative_pose_error(est.transformed(transform), ref)
    both = relative_pose_error(est.transformed(transform), ref.transformed(transform))
    for report in (moved, both):
        for a, b in zip(base.segments, report.segments):
            assert a.pair_count == b.pair_count
            assert a.median_translation_pct == pytest.approx(b.median_translation_pct, abs=1e-9)
            assert a.median_rotation_deg_per_m == pytest.approx(b.median_rotation_deg_per_m, abs=1e-9)


def test_unreachable_lengths_are_omitted():
    report = relative_pose_error(_line(poses=11), _line(poses=11), [0.5, 2.0, 100.0])
    assert [s.length_m for s in report.segments] == [0.5]
    assert report.omitted_lengths == [2.0, 100.0]
    assert report.segment(0.5) is not None
    assert report.segment(2.0) is None


def test_end_pose_tolerance():
    """Segments whose nearest end pose is further than the tolerance are skipped."""
    sparse = Trajectory([PoseSE3(np.eye(3), [float(k), 0.0, 0.0], k * STEP_NS) for k in range(10)])
    assert relative_pose_error(sparse, sparse, [1.5]).omitted_lengths == [1.5]
    assert relative_pose_error(sparse, sparse, [1.5], RPEOptions(tolerance=0.4)).segments[0].pair_count > 0


def test_pooled_errors():
    """Pooling counts the pairs of every run."""
    single = relative_pose_error(_line(1.01), _line(), [1.0])
    pooled = pooled_relative_pose_error([(_line(1.01), _line()), (_line(1.01), _line())], [1.0])
    assert pooled.segments[0].pair_count == 2 * single.segments[0].pair_count
    assert pooled.segments[0].median_translation_pct == pytest.approx(single.segments[0].median_translation_pct)


def test_segment_lengths_must_be_positive():
    with pytest.raises(ValueError):
        relative_pose_error(_line(), _line(), [0.0])


def test_reports():
    report = relative_pose_error(_line(1.01), _line(), [1.0, 2.0])
    lines = rpe_csv(report).splitlines()
    assert lines[0] == "length_m,pairs,median_translation_pct,median_rotation_deg_per_m"
    assert len(lines) == 3

    data = rpe_json(report)
    assert [s["length_m"] for s in data["segments"]] == [1.0, 2.0]
    assert json.loads(rpe_json_text(report)) == data
