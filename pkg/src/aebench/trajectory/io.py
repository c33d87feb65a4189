"""Read and write trajectories as text.

One pose per line: `timestamp_s tx ty tz qx qy qz qw`, space separated, with
the quaternion scalar last. Lines starting with `#` are comments; commas are
accepted as separators. Timestamps are written as exact decimal seconds with
nanosecond resolution.
"""

from decimal import Decimal, InvalidOperation
from pathlib import Path

from aebench.util import Pathlike, atomic_write_text

from .model import PoseSE3, Trajectory, TrajectoryFormatError

HEADER = "# timestamp_s tx ty tz qx qy qz qw"


def format_timestamp(ns: int) -> str:
    sign = "-" if ns < 0 else ""
    s, frac = divmod(abs(ns), 1_000_000_000)
    return f"{sign}{s}.{frac:09d}"


def parse_timestamp(text: str) -> int:
    """Seconds to integer nanoseconds without going through a binary float."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation as e:
        raise ValueError(f"invalid timestamp {text!r}") from e
    if not value.is_finite():
        raise ValueError(f"invalid timestamp {text!r}")
    return int((value * 1_000_000_000).to_integral_value())


def trajectory_to_text(trajectory: Trajectory) -> str:
    lines = [HEADER]
    for p in trajectory.poses:
        values = [*p.translation.tolist(), *p.quaternion().tolist()]
        lines.append(" ".join([format_timestamp(p.timestamp)] + [repr(float(v)) for v in values]))
    return "\n".join(lines) + "\n"


def trajectory_from_text(text: str, source: str = "<string>") -> Trajectory:
    poses: list[PoseSE3] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if len(line) == 0 or line.startswith("#"):
            continue
        fields = line.replace(",", " ").split()
        if len(fields) != 8:
            raise TrajectoryFormatError(f"{source}:{lineno}: expected 8 values, found {len(fields)}")
        try:
            ts = parse_timestamp(fields[0])
            values = [float(v) for v in fields[1:]]
            poses.append(PoseSE3.from_quaternion(values[3:], values[:3], ts))
        except ValueError as e:
            raise TrajectoryFormatError(f"{source}:{lineno}: {e}") from e

    try:
        return Trajectory(poses)
    except ValueError as e:
        raise TrajectoryFormatError(f"{source}: {e}") from e


def save_trajectory(trajectory: Trajectory, path: Pathlike) -> None:
    atomic_write_text(path, trajectory_to_text(trajectory))


def load_trajectory(path: Pathlike) -> Trajectory:
    path = Path(path)
    with open(path, "r") as f:
        return trajectory_from_text(f.read(), str(path))
