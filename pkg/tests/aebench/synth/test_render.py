import numpy as np
import pytest

from aebench.photometry import exposures_to_dns
from aebench.synth import (
    CaptureSpec,
    SceneSpec,
    Window,
    camera_path,
    frame_timestamp,
    generate_radiance_canvas,
    render_exposure_sweep,
    render_frame,
    render_sequence,
    render_static_cycle,
    vignette_field,
)

SCENE = SceneSpec(width=320, height=240, seed=1)
CAPTURE = CaptureSpec(path_radius_px=40.0, path_step_px=6.0, seed=1)


def test_vignette():
    v = vignette_field(161, 121, 0.3)
    assert v[60, 80] == pytest.approx(1.0)
    assert v[0, 0] < v[60, 80]
    assert v.min() >= 0.7
    assert np.array_equal(vignette_field(16, 12, 0.0), np.ones((12, 16)))


def test_frame_timestamp():
    assert frame_timestamp(0, 22.0) == 0
    assert frame_timestamp(22, 22.0) == 1_000_000_000


def test_noiseless_frame_follows_the_image_model():
    """DN = f(dt * V * E) on the window crop."""
    capture = CaptureSpec(read_noise_dn=0.0, vignette_strength=0.5)
    canvas = generate_radiance_canvas(SCENE)
    window = Window(30, 20, 160, 120)
    img = render_frame(canvas, window, 4000.0, capture)

    crop = canvas.data[20:140, 30:190]
    expected = exposures_to_dns(4000.0 * 1e-6 * vignette_field(160, 120, 0.5) * crop, capture.response())
    assert np.array_equal(img.data, expected)
    assert img.exposure == 4000.0


def test_noise_is_keyed_by_frame():
    canvas = generate_radiance_canvas(SCENE)
    window = Window(0, 0, 160, 120)
    a = render_frame(canvas, window, 4000.0, CAPTURE, frame_index=5)
    b = render_frame(canvas, window, 4000.0, CAPTURE, frame_index=5)
    c = render_frame(canvas, window, 4000.0, CAPTURE, frame_index=6)
    assert a.same_pixels(b)
    assert not a.same_pixels(c)


def test_render_frame_checks():
    canvas = generate_radiance_canvas(SCENE)
    with pytest.raises(ValueError):
        render_frame(canvas, Window(200, 0, 160, 120), 4000.0, CAPTURE)
    with pytest.raises(ValueError):
        render_frame(canvas, Window(0, 0, 160, 120), 0.0, CAPTURE)


def test_camera_path():
    """One window per bracket; a static capture never moves."""
    windows = camera_path(SCENE, CAPTURE, 3)
    assert len(windows) == 18
    assert all(w.inside(SCENE.width, SCENE.height) for w in windows)
    assert windows[0] != windows[6]

    static = camera_path(SCENE, CaptureSpec(path_radius_px=40.0, path_step_px=0.0, drift_px=0.0), 3)
    assert len(set(static)) == 1

    with pytest.raises(ValueError):
        camera_path(SCENE, CaptureSpec(path_radius_px=300.0), 1)


def test_render_sequence():
    seq = render_sequence(SCENE, CAPTURE, 4)
    assert len(seq.cycles) == 4
    assert [c.cycle_index for c in seq.cycles] == [0, 1, 2, 3]
    assert all(c.exposures == CAPTURE.ladder_us for c in seq.cycles)
    assert len(seq.frames) == 24
    assert len(seq.manifest.records) == 24
    assert seq.manifest.cycle_count == 4

    gt = seq.groundtruth
    assert len(gt) == 24
    assert list(gt.timestamps) == [f.timestamp for f in seq.frames]
    assert np.array_equal(gt.poses[0].translation, [0.0, 0.0, 0.0])
    assert gt.path_length() > 0.0

    with pytest.raises(ValueError):
        render_sequence(SCENE, CAPTURE, 0)


def test_rendering_is_reproducible():
    a = render_sequence(SCENE, CAPTURE, 2)
    b = render_sequence(SCENE, CAPTURE, 2)
    assert all(x.same_pixels(y) for x, y in zip(a.frames, b.frames))


def test_sweep_and_static_cycle():
    """Sweep frames and the static cycle share one window but never one noise stream."""
    canvas = generate_radiance_canvas(SCENE)
    sweep = render_exposure_sweep(SCENE, CAPTURE, [1000.0, 1000.0, 2000.0], canvas)
    assert [f.exposure for f in sweep] == [1000.0, 1000.0, 2000.0]
    assert [f.frame_index for f in sweep] == [0, 1, 2]
    assert not sweep[0].same_pixels(sweep[1])

    cycle = render_static_cycle(SCENE, CAPTURE, canvas)
    assert cycle.exposures == CAPTURE.ladder_us
    assert not cycle.images[0].same_pixels(sweep[0])
