"""Zero-mean normalized cross-correlation matching of keypoint patches."""

import logging

from typing import Sequence

import numpy as np
import numpy.typing as npt

from aebench.photometry import FloatArray, RawImage

from .model import Keypoint, MatcherOptions, MatchSet

LOG = logging.getLogger(__name__)

_FLAT_NORM = 1e-9


def _patches(
    img: RawImage, keypoints: Sequence[Keypoint], options: MatcherOptions
) -> tuple[FloatArray, npt.NDArray[np.int64]]:
    """Unit-norm zero-mean patches of the eligible keypoints and their indices."""
    half = options.patch_size // 2
    margin = max(half, options.border)
    f = img.normalized()
    h, w = f.shape

    rows: list[FloatArray] = []
    index: list[int] = []
    for i, kp in enumerate(keypoints):
        x, y = int(round(kp.x)), int(round(kp.y))
        if x < margin or y < margin or x > w - 1 - margin or y > h - 1 - margin:
            continue
        p = f[y - half : y + half + 1, x - half : x + half + 1].reshape(-1)
        p = p - p.mean()
        norm = float(np.linalg.norm(p))
        if norm < _FLAT_NORM:
            continue
        rows.append(p / norm)
        index.append(i)

    if len(rows) == 0:
        return np.zeros((0, options.patch_size * options.patch_size)), np.zeros(0, dtype=np.int64)
    return np.stack(rows), np.asarray(index, dtype=np.int64)


def eligible_keypoints(
    img: RawImage, keypoints: Sequence[Keypoint], options: MatcherOptions = MatcherOptions()
) -> list[int]:
    """Indices of keypoints far enough from the border and with a non-flat patch."""
    return _patches(img, keypoints, options)[1].tolist()


def match_features(
    img_a: RawImage,
    kps_a: Sequence[Keypoint],
    img_b: RawImage,
    kps_b: Sequence[Keypoint],
    options: MatcherOptions = MatcherOptions(),
) -> MatchSet:
    """Mutual best matches passing the correlation and ratio tests, ordered by index into A."""
    pa, ia = _patches(img_a, kps_a, options)
    pb, ib = _patches(img_b, kps_b, options)
    if len(ia) == 0 or len(ib) == 0:
        return MatchSet()

    corr = pa @ pb.T
    best_b = np.argmax(corr, axis=1)
    best_a = np.argmax(corr, axis=0)
    best = corr[np.arange(len(ia)), best_b]

    if corr.shape[1] > 1:
        second = np.partition(corr, -2, axis=1)[:, -2]
    else:
        second = np.full(len(ia), -np.inf)

    mutual = best_a[best_b] == np.arange(len(ia))
    accept = mutual & (best >= options.min_correlation) & (second <= options.ratio * best)

    pairs = [(int(ia[k]), int(ib[best_b[k]])) for k in np.flatnonzero(accept)]
    LOG.debug(f"Matched {len(pairs)} of {len(ia)} x {len(ib)} eligible keypoints")
    return MatchSet(pairs)
