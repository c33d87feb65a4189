"""Keypoint uniformity and trajectory success metrics."""

from typing import Sequence

import numpy as np

from .model import Keypoint, SuccessCurve

GRID_CELLS = 20

DEFAULT_TAUS: list[int] = list(range(0, 301, 5))
"""Success-curve thresholds; 5 is the fewest matches motion estimation can use."""


def grid_uniformity(keypoints: Sequence[Keypoint], width: int, height: int, cells: int = GRID_CELLS) -> float:
    """Percentage of the cells x cells grid occupied by at least one keypoint."""
    if width <= 0 or height <= 0:
        raise ValueError(f"Image size must be positive, got {width}x{height}")
    if len(keypoints) == 0:
        return 0.0

    occupied = np.zeros((cells, cells), dtype=np.bool_)
    for kp in keypoints:
        if not (0.0 <= kp.x < width and 0.0 <= kp.y < height):
            raise ValueError(f"Keypoint ({kp.x}, {kp.y}) outside a {width}x{height} image")
        col = min(int(kp.x * cells / width), cells - 1)
        row = min(int(kp.y * cells / height), cells - 1)
        occupied[row, col] = True
    return float(np.count_nonzero(occupied)) * 100.0 / (cells * cells)


def sequence_success(match_counts: Sequence[int], tau: int) -> bool:
    """True if every consecutive frame pair has at least `tau` matches."""
    if len(match_counts) == 0:
        raise ValueError("A trajectory needs at least one frame pair")
    return min(match_counts) >= tau


def success_curve(trajectories: Sequence[Sequence[int]], taus: Sequence[int] = DEFAULT_TAUS) -> SuccessCurve:
    """Fraction of trajectories succeeding at each threshold."""
    if len(trajectories) == 0:
        raise ValueError("A success curve needs at least one trajectory")
    thresholds = sorted(set(int(t) for t in taus))
    minima = np.asarray([min(counts) if len(counts) > 0 else -1 for counts in trajectories])
    if np.any(minima < 0):
        raise ValueError("A trajectory needs at least one frame pair")
    rates = [float(np.mean(minima >= tau)) for tau in thresholds]
    return SuccessCurve(thresholds, rates)
