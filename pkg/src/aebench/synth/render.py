"""Forward image formation and synthetic bracketed sequences.

A frame is rendered as `DN = f(dt * V(x) * E(x) + n)`: the canvas radiance `E`
under the window, a radial cos^4 vignette `V`, seeded Gaussian noise `n` in
relative-exposure units and the ground-truth response `f`. Noise is drawn from
a generator keyed by (capture seed, frame index), so any frame can be
re-rendered on its own.
"""

import logging

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from aebench.emulation import BracketCycle
from aebench.photometry import DN_MAX, FloatArray, RadianceImage, RawImage, ResponseCurve, exposures_to_dns
from aebench.trajectory import PoseSE3, Trajectory

from .model import CaptureSpec, FrameRecord, SceneSpec, SequenceManifest, Window
from .noise import generate_radiance_canvas

LOG = logging.getLogger(__name__)

# Frame indices of the bracket cycle rendered next to a validation sweep, far
# from the sweep's own indices so the noise streams never coincide.
STATIC_CYCLE_NOISE_OFFSET = 1_000_000


def vignette_field(width: int, height: int, strength: float) -> FloatArray:
    """`(1 - s) + s * cos^4(theta)` for a pinhole with focal length equal to the width."""
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    r2 = ((xs - cx) ** 2 + (ys - cy) ** 2) / float(width) ** 2
    return (1.0 - strength) + strength / (1.0 + r2) ** 2


def frame_timestamp(frame_index: int, fps: float) -> int:
    return int(round(frame_index * 1e9 / fps))


def render_frame(
    canvas: RadianceImage,
    window: Window,
    exposure_us: float,
    capture: CaptureSpec,
    crf: Optional[ResponseCurve] = None,
    frame_index: int = 0,
    timestamp: int = 0,
    noise_key: Optional[int] = None,
) -> RawImage:
    """Render the crop `window` of `canvas` at `exposure_us`.

    Args:
        crf: Ground-truth response; defaults to `capture.response()`.
        noise_key: Selects the noise stream; defaults to `frame_index`.
    """
    if not exposure_us > 0.0:
        raise ValueError(f"Exposure must be positive, got {exposure_us} us")
    if not window.inside(canvas.width, canvas.height):
        raise ValueError(f"Window {window} is outside the {canvas.width}x{canvas.height} canvas")

    curve = capture.response() if crf is None else crf
    radiance = canvas.data[window.top : window.top + window.height, window.left : window.left + window.width]
    vignette = vignette_field(window.width, window.height, capture.vignette_strength)
    x = exposure_us * 1e-6 * vignette * radiance

    variance = (capture.read_noise_dn / DN_MAX) ** 2
    if capture.full_well > 0.0:
        variance = variance + np.minimum(x, 1.0) / capture.full_well
    if np.any(variance > 0.0):
        key = frame_index if noise_key is None else noise_key
        rng = np.random.default_rng([capture.seed, key])
        x = x + rng.standard_normal(x.shape) * np.sqrt(variance)

    dns = exposures_to_dns(np.maximum(x, 0.0), curve)
    return RawImage(dns, exposure_us, timestamp=timestamp, frame_index=frame_index)


def circle_center(scene: SceneSpec, capture: CaptureSpec, arc_px: float) -> tuple[float, float]:
    """Window center after travelling `arc_px` along the circular path, starting at its left-most point."""
    cx, cy = scene.width / 2.0, scene.height / 2.0
    r = capture.path_radius_px
    if r == 0.0:
        return (cx, cy)
    angle = np.pi + arc_px / r
    return (cx + r * float(np.cos(angle)), cy + r * float(np.sin(angle)))


def check_path(scene: SceneSpec, capture: CaptureSpec) -> None:
    """Raise if any window on the circular path would leave the canvas."""
    r = capture.path_radius_px
    half_w, half_h = capture.frame_width / 2.0, capture.frame_height / 2.0
    if scene.width / 2.0 - r - half_w < 1.0 or scene.height / 2.0 - r - half_h < 1.0:
        raise ValueError(
            f"A {capture.frame_width}x{capture.frame_height} window on a path of radius {r} px "
            f"exits the {scene.width}x{scene.height} canvas"
        )


def camera_path(scene: SceneSpec, capture: CaptureSpec, cycles: int) -> list[Window]:
    """One window per bracket, in capture order."""
    check_path(scene, capture)
    windows: list[Window] = []
    for c in range(cycles):
        for b in range(len(capture.ladder_us)):
            cx, cy = circle_center(scene, capture, c * capture.path_step_px + b * capture.drift_px)
            windows.append(Window.centered(cx, cy, capture.frame_width, capture.frame_height))
    return windows


@dataclass(eq=False)
class RenderedSequence:
    cycles: list[BracketCycle]
    groundtruth: Trajectory
    """One pose per frame: the window center mapped to meters, identity rotation."""

    manifest: SequenceManifest
    crf: ResponseCurve
    windows: list[Window] = field(default_factory=list[Window])

    @property
    def frames(self) -> list[RawImage]:
        return [img for c in self.cycles for img in c.images]


def render_sequence(
    scene: SceneSpec, capture: CaptureSpec, cycles: int, canvas: Optional[RadianceImage] = None
) -> RenderedSequence:
    """Render `cycles` bracket cycles along the camera path."""
    if cycles < 1:
        raise ValueError(f"Cycle count must be positive, got {cycles}")

    canvas = generate_radiance_canvas(scene) if canvas is None else canvas
    crf = capture.response()
    windows = camera_path(scene, capture, cycles)
    ladder = capture.ladder_us
    origin = windows[0].center
    scale = capture.meters_per_px

    out: list[BracketCycle] = []
    records: list[FrameRecord] = []
    poses: list[PoseSE3] = []
    for c in range(cycles):
        images: list[RawImage] = []
        for b, exposure in enumerate(ladder):
            k = c * len(ladder) + b
            ts = frame_timestamp(k, capture.fps)
            images.append(render_frame(canvas, windows[k], exposure, capture, crf, frame_index=k, timestamp=ts))
            records.append(FrameRecord(k, c, exposure, ts, f"images/frame_{k:06d}.pgm"))

            x, y = windows[k].center
            poses.append(PoseSE3(np.eye(3), [(x - origin[0]) * scale, (y - origin[1]) * scale, 0.0], ts))
        out.append(BracketCycle(images, cycle_index=c, ladder=ladder))

    LOG.info(f"Rendered {cycles} cycles ({len(records)} frames) of scene seed {scene.seed}")
    return RenderedSequence(out, Trajectory(poses), SequenceManifest(records), crf, windows)


def static_window(scene: SceneSpec, capture: CaptureSpec) -> Window:
    return Window.centered(scene.width / 2.0, scene.height / 2.0, capture.frame_width, capture.frame_height)


def render_exposure_sweep(
    scene: SceneSpec,
    capture: CaptureSpec,
    exposures: Sequence[float],
    canvas: Optional[RadianceImage] = None,
    first_index: int = 0,
) -> list[RawImage]:
    """Render the canvas center once per exposure with fresh noise for each frame."""
    canvas = generate_radiance_canvas(scene) if canvas is None else canvas
    crf = capture.response()
    window = static_window(scene, capture)
    frames: list[RawImage] = []
    for k, exposure in enumerate(exposures):
        index = first_index + k
        frames.append(
            render_frame(
                canvas, window, exposure, capture, crf, frame_index=index, timestamp=frame_timestamp(index, capture.fps)
            )
        )
    return frames


def render_static_cycle(
    scene: SceneSpec, capture: CaptureSpec, canvas: Optional[RadianceImage] = None, cycle_index: int = 0
) -> BracketCycle:
    """One bracket cycle of the static center window, sharing the sweep's scene."""
    first = STATIC_CYCLE_NOISE_OFFSET + cycle_index * len(capture.ladder_us)
    images = render_exposure_sweep(scene, capture, capture.ladder_us, canvas, first_index=first)
    return BracketCycle(images, cycle_index=cycle_index, ladder=capture.ladder_us)
