"""Poses, trajectories, camera intrinsics and RPE reports."""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt

from scipy.spatial.transform import Rotation

FloatArray = npt.NDArray[np.float64]

_ORTHO_TOL = 1e-9


class TrajectoryFormatError(ValueError):
    """A trajectory file could not be parsed."""


@dataclass(eq=False)
class PoseSE3:
    """A rigid transform with a timestamp (nanoseconds).

    As a camera pose it maps camera coordinates to world coordinates.
    """

    rotation: FloatArray
    translation: FloatArray
    timestamp: int = 0

    def __post_init__(self) -> None:
        r = np.array(self.rotation, dtype=np.float64)
        t = np.array(self.translation, dtype=np.float64).reshape(-1)
        if r.shape != (3, 3):
            raise ValueError(f"Rotation must be 3x3, got shape {r.shape}")
        if t.shape != (3,):
            raise ValueError(f"Translation must have 3 components, got shape {t.shape}")
        if np.max(np.abs(r.T @ r - np.eye(3))) > _ORTHO_TOL or abs(np.linalg.det(r) - 1.0) > _ORTHO_TOL:
            raise ValueError("Rotation must be orthonormal with determinant +1")
        self.rotation = r
        self.translation = t
        self.timestamp = int(self.timestamp)

    @staticmethod
    def identity(timestamp: int = 0) -> "PoseSE3":
        return PoseSE3(np.eye(3), np.zeros(3), timestamp)

    @staticmethod
    def from_quaternion(xyzw: Sequence[float], translation: Sequence[float], timestamp: int = 0) -> "PoseSE3":
        rotation = Rotation.from_quat(np.asarray(xyzw, dtype=np.float64)).as_matrix()
        return PoseSE3(rotation, np.asarray(translation), timestamp)

    def quaternion(self) -> FloatArray:
        """Unit quaternion (x, y, z, w) with w >= 0."""
        q = np.asarray(Rotation.from_matrix(self.rotation).as_quat(), dtype=np.float64)
        return -q if q[3] < 0 else q

    def matrix(self) -> FloatArray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    def inverse(self) -> "PoseSE3":
        rt = self.rotation.T
        return PoseSE3(rt, -(rt @ self.translation), self.timestamp)

    def compose(self, other: "PoseSE3") -> "PoseSE3":
        """`self * other`; the result carries `other`'s timestamp."""
        return PoseSE3(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
            other.timestamp,
        )

    def __matmul__(self, other: "PoseSE3") -> "PoseSE3":
        return self.compose(other)

    def angle(self) -> float:
        """Rotation angle in radians."""
        return float(Rotation.from_matrix(self.rotation).magnitude())


@dataclass(eq=False)
class Trajectory:
    """Timestamped poses with strictly increasing timestamps."""

    poses: list[PoseSE3]

    def __post_init__(self) -> None:
        if len(self.poses) < 2:
            raise ValueError(f"A trajectory needs at least 2 poses, got {len(self.poses)}")
        for a, b in zip(self.poses, self.poses[1:]):
            if not b.timestamp > a.timestamp:
                raise ValueError(f"Trajectory timestamps must be strictly increasing ({a.timestamp} -> {b.timestamp})")

    def __len__(self) -> int:
        return len(self.poses)

    @property
    def timestamps(self) -> npt.NDArray[np.int64]:
        return np.asarray([p.timestamp for p in self.poses], dtype=np.int64)

    def positions(self) -> FloatArray:
        return np.stack([p.translation for p in self.poses])

    def path_length(self) -> float:
        return float(np.sum(np.linalg.norm(np.diff(self.positions(), axis=0), axis=1)))

    def transformed(self, transform: PoseSE3, scale: float = 1.0) -> "Trajectory":
        """Apply `x -> scale * R x + t` to every pose."""
        r, t = transform.rotation, transform.translation
        return Trajectory(
            [PoseSE3(r @ p.rotation, scale * (r @ p.translation) + t, p.timestamp) for p in self.poses]
        )


@dataclass(frozen=True)
class Intrinsics:
    """Pinhole camera parameters in pixels."""

    fx: float
    fy: float
    cx: float
    cy: float

    def __post_init__(self) -> None:
        if not (self.fx > 0.0 and self.fy > 0.0):
            raise ValueError(f"Focal lengths must be positive, got fx={self.fx}, fy={self.fy}")

    def matrix(self) -> FloatArray:
        return np.array([[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]])

    @staticmethod
    def for_image(width: int, height: int, focal: Optional[float] = None) -> "Intrinsics":
        """Centered principal point; focal length defaults to the image width."""
        f = float(width) if focal is None else focal
        return Intrinsics(f, f, (width - 1) / 2.0, (height - 1) / 2.0)


@dataclass
class RPESegment:
    length_m: float
    pair_count: int
    median_translation_pct: float
    median_rotation_deg_per_m: float


@dataclass
class RPEReport:
    """Relative pose errors per segment length.

    Lengths for which no pose pair was found are listed in `omitted_lengths`.
    """

    segments: list[RPESegment] = field(default_factory=list[RPESegment])
    omitted_lengths: list[float] = field(default_factory=list[float])

    def segment(self, length_m: float) -> Optional[RPESegment]:
        for s in self.segments:
            if s.length_m == length_m:
                return s
        return None
