import numpy as np
import pytest

from scipy.spatial.transform import Rotation

from aebench.trajectory import (
    PoseSE3,
    Trajectory,
    TrajectoryFormatError,
    load_trajectory,
    save_trajectory,
    trajectory_from_text,
    trajectory_to_text,
)


def _trajectory() -> Trajectory:
    return Trajectory(
        [
            PoseSE3(Rotation.from_rotvec([0.1 * k, -0.2, 0.05 * k]).as_matrix(), [k / 3.0, -k, 1e-7 * k], ts)
            for k, ts in enumerate([0, 45_454_545, 1_000_000_001, 86_400_123_456_789])
        ]
    )


def test_save_and_load(tmp_path):
    """Timestamps and positions survive exactly, rotations to numerical precision."""
    traj = _trajectory()
    path = tmp_path / "traj.txt"
    save_trajectory(traj, path)
    loaded = load_trajectory(path)

    assert list(loaded.timestamps) == list(traj.timestamps)
    assert np.array_equal(loaded.positions(), traj.positions())
    for a, b in zip(loaded.poses, traj.poses):
        assert np.allclose(a.rotation, b.rotation, atol=1e-12)


def test_text_format():
    lines = trajectory_to_text(_trajectory()).splitlines()
    assert lines[0] == "# timestamp_s tx ty tz qx qy qz qw"
    assert lines[3].split()[0] == "1.000000001"
    assert lines[4].split()[0] == "86400.123456789"
    assert float(lines[1].split()[7]) >= 0.0


def test_comments_and_commas():
    text = "# a comment\n\n0.0, 1, 2, 3, 0, 0, 0, 1\n0.5 4 5 6 0 0 0 1\n"
    traj = trajectory_from_text(text)
    assert list(traj.timestamps) == [0, 500_000_000]
    assert np.array_equal(traj.poses[1].translation, [4.0, 5.0, 6.0])


def test_malformed_text():
    with pytest.raises(TrajectoryFormatError, match=":1:"):
        trajectory_from_text("0.0 1 2 3 0 0 1\n1.0 1 2 3 0 0 0 1\n")
    with pytest.raises(TrajectoryFormatError):
        trajectory_from_text("zero 1 2 3 0 0 0 1\n1.0 1 2 3 0 0 0 1\n")
    with pytest.raises(TrajectoryFormatError):
        trajectory_from_text("1.0 1 2 3 0 0 0 1\n1.0 1 2 3 0 0 0 1\n")
    with pytest.raises(TrajectoryFormatError):
        trajectory_from_text("1.0 1 2 3 0 0 0 1\n")


def test_pose_algebra():
    """Inverse and composition behave as rigid transforms."""
    pose = _trajectory().poses[2]
    identity = pose.compose(pose.inverse())
    assert np.allclose(identity.matrix(), np.eye(4), atol=1e-12)
    assert np.allclose((pose @ pose).matrix(), pose.matrix() @ pose.matrix())

    q = pose.quaternion()
    again = PoseSE3.from_quaternion(q, pose.translation)
    assert np.allclose(again.rotation, pose.rotation)
    assert q[3] >= 0.0

    with pytest.raises(ValueError):
        PoseSE3(np.diag([1.0, 1.0, -1.0]), np.zeros(3))
    with pytest.raises(ValueError):
        Trajectory([PoseSE3.identity(5)])
