"""Keypoints, matches, success curves and the options of the detector and matcher."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Keypoint:
    x: float
    y: float
    score: float
    """Minimum eigenvalue of the structure tensor at the keypoint."""


@dataclass
class MatchSet:
    """One-to-one pairs of (index into keypoints A, index into keypoints B)."""

    pairs: list[tuple[int, int]] = field(default_factory=list[tuple[int, int]])

    def __post_init__(self) -> None:
        a = [p[0] for p in self.pairs]
        b = [p[1] for p in self.pairs]
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("Matches must be one-to-one")

    @property
    def count(self) -> int:
        return len(self.pairs)


@dataclass
class SuccessCurve:
    thresholds: list[int]
    """Values of tau, the minimum number of matches between consecutive frames."""

    success_rate: list[float]
    """Fraction of trajectories whose every frame pair reaches tau."""

    def __post_init__(self) -> None:
        if len(self.thresholds) != len(self.success_rate):
            raise ValueError("Success curve thresholds and rates differ in length")
        for a, b in zip(self.thresholds, self.thresholds[1:]):
            if not b > a:
                raise ValueError(f"Success curve thresholds must be strictly increasing, got {self.thresholds}")

    def rate_at(self, tau: int) -> float:
        return self.success_rate[self.thresholds.index(tau)]


@dataclass(frozen=True)
class DetectorOptions:
    max_count: int = 500
    """Keep at most this many keypoints, strongest first."""

    nms_radius: int = 5
    """No two keypoints are closer than this (pixels)."""

    quality: float = 0.01
    """Discard responses below this fraction of the strongest response."""

    min_size: int = 32
    """Smallest accepted image width and height."""


@dataclass(frozen=True)
class MatcherOptions:
    patch_size: int = 11
    """Odd side length of the correlation patch."""

    min_correlation: float = 0.8
    ratio: float = 0.9
    """A match is rejected if the second best correlation exceeds `ratio` times the best."""

    border: int = 5
    """Keypoints this close to the image border do not take part in matching."""

    def __post_init__(self) -> None:
        if self.patch_size < 3 or self.patch_size % 2 == 0:
            raise ValueError(f"Patch size must be odd and at least 3, got {self.patch_size}")
