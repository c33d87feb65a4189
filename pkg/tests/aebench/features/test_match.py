import numpy as np
import pytest

from scipy import ndimage

from aebench.features import (
    Keypoint,
    MatcherOptions,
    MatchSet,
    detect_keypoints,
    eligible_keypoints,
    match_features,
)
from aebench.photometry import RawImage


def _texture(seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    smooth = ndimage.gaussian_filter(rng.random((140, 200)), 2.0)
    smooth = (smooth - smooth.min()) / (smooth.max() - smooth.min())
    return np.round(200 + 3600 * smooth).astype(np.uint16)


def _crop(texture: np.ndarray, left: int) -> RawImage:
    return RawImage(texture[10:130, left : left + 160], 1000.0)


def test_shift_is_recovered():
    """Matching a frame against a copy shifted 3 px left gives a median displacement of 3 px."""
    texture = _texture()
    a, b = _crop(texture, 10), _crop(texture, 7)
    kps_a, kps_b = detect_keypoints(a), detect_keypoints(b)
    matches = match_features(a, kps_a, b, kps_b)

    assert matches.count >= 20
    dx = [kps_b[j].x - kps_a[i].x for i, j in matches.pairs]
    dy = [kps_b[j].y - kps_a[i].y for i, j in matches.pairs]
    assert abs(float(np.median(dx)) - 3.0) <= 0.5
    assert abs(float(np.median(dy))) <= 0.5


def test_self_matches_are_identities():
    """A frame matched against itself only pairs each keypoint with itself."""
    img = _crop(_texture(1), 20)
    kps = detect_keypoints(img)
    matches = match_features(img, kps, img, kps)
    assert matches.count > 0
    assert all(i == j for i, j in matches.pairs)
    assert [i for i, _ in matches.pairs] == sorted(i for i, _ in matches.pairs)


def test_flat_patches_do_not_match():
    img = RawImage(np.full((60, 60), 1500, dtype=np.uint16), 1000.0)
    kps = [Keypoint(30.0, 30.0, 1.0)]
    assert eligible_keypoints(img, kps) == []
    assert match_features(img, kps, img, kps).count == 0


def test_border_keypoints_are_ineligible():
    img = _crop(_texture(2), 0)
    kps = [Keypoint(2.0, 50.0, 1.0), Keypoint(80.0, 60.0, 1.0), Keypoint(80.0, 117.0, 1.0)]
    assert eligible_keypoints(img, kps) == [1]


def test_match_sets_are_one_to_one():
    with pytest.raises(ValueError):
        MatchSet([(0, 1), (2, 1)])
    with pytest.raises(ValueError):
        MatchSet([(0, 1), (0, 2)])
    assert MatchSet([(0, 1), (1, 0)]).count == 2


def test_patch_size_must_be_odd():
    with pytest.raises(ValueError):
        MatcherOptions(patch_size=10)


def test_unrelated_noise_barely_matches():
    """Two independent noise frames share almost no correspondences."""
    rng = np.random.default_rng(9)
    a = RawImage(rng.integers(0, 4096, (120, 160)).astype(np.uint16), 1000.0)
    b = RawImage(rng.integers(0, 4096, (120, 160)).astype(np.uint16), 1000.0)
    kps_a, kps_b = detect_keypoints(a), detect_keypoints(b)
    assert len(kps_a) > 100 and len(kps_b) > 100
    assert match_features(a, kps_a, b, kps_b).count < 0.05 * min(len(kps_a), len(kps_b))
