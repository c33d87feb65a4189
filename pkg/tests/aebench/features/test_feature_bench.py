import csv
import io

import numpy as np
import pytest

from scipy import ndimage

from aebench.features import (
    Distribution,
    TrajectoryFeatures,
    evaluate_frames,
    features_json,
    plot_features,
    summarize_controller,
    trajectory_csv,
)
from aebench.photometry import RawImage


def _frames(count: int, step: int = 2) -> list[RawImage]:
    """Crops of one smooth texture moving `step` px per frame."""
    rng = np.random.default_rng(4)
    smooth = ndimage.gaussian_filter(rng.random((140, 240)), 2.0)
    smooth = (smooth - smooth.min()) / (smooth.max() - smooth.min())
    texture = np.round(300 + 3400 * smooth).astype(np.uint16)
    return [RawImage(texture[10:130, 5 + k * step : 165 + k * step], 1000.0, frame_index=k) for k in range(count)]


def _trajectory(name: str, counts: list[int]) -> TrajectoryFeatures:
    return TrajectoryFeatures(name, counts, [50.0 + c for c in counts], [100] * (len(counts) + 1), 0.01)


def test_evaluate_frames():
    """One match count and one uniformity value per consecutive frame pair."""
    result = evaluate_frames(_frames(4), "fixed/seq")
    assert result.name == "fixed/seq"
    assert len(result.match_counts) == 3
    assert len(result.uniformity_pct) == 3
    assert len(result.keypoint_counts) == 4
    assert min(result.match_counts) >= 20
    assert all(0.0 < u <= 100.0 for u in result.uniformity_pct)
    assert result.mean_saturation == 0.0


def test_evaluate_needs_two_frames():
    with pytest.raises(ValueError):
        evaluate_frames(_frames(1))


def test_trajectory_csv():
    rows = list(csv.reader(io.StringIO(trajectory_csv(_trajectory("a", [12, 30])))))
    assert rows == [["frame_pair", "matches", "uniformity_pct_A"], ["0", "12", "62.00"], ["1", "30", "80.00"]]


def test_distribution():
    d = Distribution.of([1.0, 2.0, 3.0, 4.0, 5.0])
    assert (d.median, d.q1, d.q3, d.minimum, d.maximum) == (3.0, 2.0, 4.0, 1.0, 5.0)
    with pytest.raises(ValueError):
        Distribution.of([])


def test_summary_and_json():
    """Summaries pool every frame pair of a controller's trajectories."""
    summary = summarize_controller("kim", [_trajectory("a", [2, 10]), _trajectory("b", [6, 8])], [0, 5, 10])
    assert summary.trajectories == 2
    assert summary.matches.median == 7.0
    assert summary.success.success_rate == [1.0, 0.5, 0.0]

    report = features_json([summary], tau_marker=5)
    entry = report["controllers"]["kim"]
    assert report["tau_marker"] == 5
    assert entry["success_rate_at_marker"] == 0.5
    assert entry["matches"]["median"] == 7.0
    assert entry["success_curve"]["tau"] == [0, 5, 10]

    with pytest.raises(ValueError):
        summarize_controller("kim", [])


def test_plots(tmp_path):
    trajectories = {"fixed": [_trajectory("a", [20, 25])], "shim": [_trajectory("b", [5, 40])]}
    summaries = [summarize_controller(n, t) for n, t in trajectories.items()]
    paths = plot_features(summaries, trajectories, tmp_path)
    assert [p.name for p in paths] == ["uniformity.svg", "matches.svg", "success_curve.svg"]
    for p in paths:
        assert "<svg" in p.read_text()
