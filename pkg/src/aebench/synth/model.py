"""Specifications of synthetic scenes and captures, and the sequence manifest.

Radiance is expressed so that `dt[s] * V(x) * E(x)` is the relative exposure
fed to the response curve: with the default mid radiance of 62.5, a mid-grey
pixel reaches relative exposure 0.5 at 8 ms.
"""

import functools

from dataclasses import dataclass, field
from pathlib import Path

from aebench.emulation import DEFAULT_LADDER_US
from aebench.photometry import ResponseCurve, load_crf, parse_crf_spec


class SequenceLoadError(ValueError):
    """A sequence directory could not be loaded."""


class MissingFileError(SequenceLoadError):
    def __init__(self, path: Path | str, what: str = "file"):
        super().__init__(f"Missing {what}: {path}")
        self.path = Path(path)


class MalformedFileError(SequenceLoadError):
    """A manifest, image or trajectory file does not follow its format."""


class PixelRangeError(SequenceLoadError):
    """An image holds digital numbers above 4095."""


@dataclass(frozen=True)
class SceneSpec:
    width: int = 1024
    """Canvas width in pixels."""

    height: int = 768
    dynamic_range: float = 4096.0
    """Ratio of the brightest to the darkest radiance."""

    mid_radiance: float = 62.5
    """Geometric mean of the darkest and brightest radiance."""

    octaves: int = 6
    base_cells: int = 16
    """Lattice cells across the canvas width in the coarsest noise octave."""

    persistence: float = 0.6
    """Amplitude ratio between successive octaves."""

    bimodality: float = 0.7
    """0 keeps the noise distribution, 1 pushes it fully towards dark and bright modes."""

    seed: int = 0

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"Canvas size must be positive, got {self.width}x{self.height}")
        if not self.dynamic_range > 1.0:
            raise ValueError(f"Dynamic range must exceed 1, got {self.dynamic_range}")
        if not self.mid_radiance > 0.0:
            raise ValueError(f"Mid radiance must be positive, got {self.mid_radiance}")
        if self.octaves < 1 or self.base_cells < 1:
            raise ValueError("Noise needs at least one octave and one lattice cell")
        if not 0.0 <= self.bimodality <= 1.0:
            raise ValueError(f"Bimodality must lie in [0, 1], got {self.bimodality}")


@functools.lru_cache(maxsize=16)
def _response(spec: str) -> ResponseCurve:
    if spec.endswith(".csv"):
        return load_crf(spec)
    return parse_crf_spec(spec)


@dataclass(frozen=True)
class CaptureSpec:
    ladder_us: tuple[float, ...] = DEFAULT_LADDER_US
    crf: str = "gamma:2.2"
    """Ground-truth response: `linear`, `gamma:<g>`, `s-curve:<a>` or a CRF CSV path."""

    read_noise_dn: float = 2.0
    """Standard deviation of the additive Gaussian noise, in DN of a linear response."""

    full_well: float = 0.0
    """Electrons at saturation for signal-proportional noise; 0 disables it."""

    vignette_strength: float = 0.3
    """Blend between no falloff (0) and a full cos^4 falloff (1)."""

    frame_width: int = 160
    frame_height: int = 120
    fps: float = 22.0
    """Bracket rate; cycles follow each other every len(ladder) / fps seconds."""

    path_step_px: float = 12.0
    """Distance the window travels between the first brackets of two cycles."""

    drift_px: float = 2.0
    """Distance the window travels between two brackets of one cycle."""

    path_radius_px: float = 300.0
    """Radius of the circular camera path around the canvas center."""

    meters_per_px: float = 0.0125
    seed: int = 0

    def __post_init__(self) -> None:
        ladder = tuple(float(e) for e in self.ladder_us)
        if len(ladder) == 0:
            raise ValueError("The exposure ladder is empty")
        for a, b in zip(ladder, ladder[1:]):
            if not b > a:
                raise ValueError(f"The exposure ladder must be strictly increasing, got {ladder}")
        if ladder[0] <= 0.0:
            raise ValueError("Exposures must be positive")
        object.__setattr__(self, "ladder_us", ladder)

        if self.read_noise_dn < 0.0 or self.full_well < 0.0:
            raise ValueError("Noise parameters must be non-negative")
        if not 0.0 <= self.vignette_strength <= 1.0:
            raise ValueError(f"Vignette strength must lie in [0, 1], got {self.vignette_strength}")
        if self.frame_width < 1 or self.frame_height < 1:
            raise ValueError(f"Frame size must be positive, got {self.frame_width}x{self.frame_height}")
        if not self.fps > 0.0 or not self.meters_per_px > 0.0:
            raise ValueError("Frame rate and pixel scale must be positive")
        if self.path_step_px < 0.0 or self.drift_px < 0.0 or self.path_radius_px < 0.0:
            raise ValueError("Path step, drift and radius must be non-negative")

    def response(self) -> ResponseCurve:
        return _response(self.crf)

    @property
    def static(self) -> bool:
        return self.path_step_px == 0.0 and self.drift_px == 0.0


@dataclass(frozen=True)
class Window:
    """A crop of the canvas; `left` and `top` are integer pixel offsets."""

    left: int
    top: int
    width: int
    height: int

    @staticmethod
    def centered(cx: float, cy: float, width: int, height: int) -> "Window":
        return Window(int(round(cx - width / 2.0)), int(round(cy - height / 2.0)), width, height)

    @property
    def center(self) -> tuple[float, float]:
        return (self.left + self.width / 2.0, self.top + self.height / 2.0)

    def inside(self, width: int, height: int) -> bool:
        return self.left >= 0 and self.top >= 0 and self.left + self.width <= width and self.top + self.height <= height


@dataclass(frozen=True)
class FrameRecord:
    frame_index: int
    cycle_index: int
    exposure_us: float
    timestamp_ns: int
    filename: str
    """Path relative to the sequence directory."""


@dataclass
class SequenceManifest:
    records: list[FrameRecord] = field(default_factory=list[FrameRecord])
    crf_file: str = "crf.csv"
    groundtruth_file: str = "groundtruth.txt"

    def __post_init__(self) -> None:
        for a, b in zip(self.records, self.records[1:]):
            if not b.timestamp_ns > a.timestamp_ns:
                raise MalformedFileError(
                    f"Frame records must be sorted by timestamp: frame {b.frame_index} at {b.timestamp_ns} ns "
                    f"follows {a.timestamp_ns} ns"
                )

    @property
    def cycle_count(self) -> int:
        return len({r.cycle_index for r in self.records})
