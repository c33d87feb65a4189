"""Minimum-eigenvalue corner detector.

Sobel gradients feed a structure tensor smoothed with a 3x3 Gaussian window;
the corner response is the smaller eigenvalue of that tensor. Candidates are
visited strongest first and accepted greedily unless an accepted keypoint lies
within the suppression radius. Positions are refined to subpixel accuracy with
a parabola through the response and its two neighbours along each axis.
"""

import logging

from typing import Optional

import numpy as np
import numpy.typing as npt

from scipy import ndimage

from aebench.photometry import FloatArray, RawImage

from .model import DetectorOptions, Keypoint

LOG = logging.getLogger(__name__)

# Responses below this are treated as zero regardless of the relative threshold.
_MIN_RESPONSE = 1e-10


def corner_response(img: RawImage) -> FloatArray:
    f = img.normalized()
    gx = ndimage.sobel(f, axis=1, mode="reflect")
    gy = ndimage.sobel(f, axis=0, mode="reflect")

    def window(a: FloatArray) -> FloatArray:
        return ndimage.gaussian_filter(a, sigma=1.0, truncate=1.0, mode="reflect")

    a = window(gx * gx)
    b = window(gx * gy)
    c = window(gy * gy)
    return (a + c) / 2.0 - np.sqrt(((a - c) / 2.0) ** 2 + b * b)


def _suppression_disk(radius: int) -> tuple[npt.NDArray[np.int_], npt.NDArray[np.int_]]:
    dy, dx = np.mgrid[-radius : radius + 1, -radius : radius + 1]
    inside = dx * dx + dy * dy <= radius * radius
    return dy[inside], dx[inside]


def _subpixel(r: FloatArray, y: int, x: int) -> tuple[float, float]:
    h, w = r.shape

    def offset(lo: float, mid: float, hi: float) -> float:
        den = lo - 2.0 * mid + hi
        if den >= 0.0:
            return 0.0
        return float(np.clip(0.5 * (lo - hi) / den, -0.5, 0.5))

    ox = offset(r[y, x - 1], r[y, x], r[y, x + 1]) if 0 < x < w - 1 else 0.0
    oy = offset(r[y - 1, x], r[y, x], r[y + 1, x]) if 0 < y < h - 1 else 0.0
    return float(np.clip(x + ox, 0, w - 1)), float(np.clip(y + oy, 0, h - 1))


def detect_keypoints(
    img: RawImage, max_count: Optional[int] = None, options: DetectorOptions = DetectorOptions()
) -> list[Keypoint]:
    """Detect up to `max_count` corners, ordered by score (descending), then y, then x."""
    if img.width < options.min_size or img.height < options.min_size:
        raise ValueError(
            f"Keypoint detection needs an image of at least {options.min_size}x{options.min_size}, "
            f"got {img.width}x{img.height}"
        )
    limit = options.max_count if max_count is None else max_count
    if limit <= 0:
        return []

    r = corner_response(img)
    peak = float(r.max())
    threshold = max(options.quality * peak, _MIN_RESPONSE)
    ys, xs = np.nonzero(r >= threshold)
    if len(ys) == 0:
        return []

    scores = r[ys, xs]
    order = np.lexsort((xs, ys, -scores))

    blocked = np.zeros(r.shape, dtype=np.bool_)
    dy, dx = _suppression_disk(options.nms_radius)
    h, w = r.shape
    accepted: list[tuple[int, int]] = []
    for k in order:
        y, x = int(ys[k]), int(xs[k])
        if blocked[y, x]:
            continue
        accepted.append((y, x))
        if len(accepted) >= limit:
            break
        by, bx = y + dy, x + dx
        ok = (by >= 0) & (by < h) & (bx >= 0) & (bx < w)
        blocked[by[ok], bx[ok]] = True

    keypoints: list[Keypoint] = []
    for y, x in accepted:
        sx, sy = _subpixel(r, y, x)
        keypoints.append(Keypoint(sx, sy, float(r[y, x])))

    LOG.debug(f"Detected {len(keypoints)} keypoints in frame {img.frame_index}")
    return keypoints
