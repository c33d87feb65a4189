"""Dataclasses for the photometric model.

An image is formed as `I(x) = f(dt * V(x) * E(x))`: scene radiance `E`,
attenuated by vignetting `V`, integrated over the exposure time `dt` and mapped
to digital numbers (DN) by the camera response function `f`. `ResponseCurve`
stores `f^-1` as a lookup table; `f` is evaluated by searching that table.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import numpy.typing as npt

DN_MAX = 4095
"""Largest digital number of a 12-bit sensor."""

LUT_SIZE = DN_MAX + 1

FloatArray = npt.NDArray[np.float64]
DnArray = npt.NDArray[np.uint16]


class CalibrationInsufficientError(ValueError):
    """Too few images to estimate a response curve."""


class DegenerateStackError(ValueError):
    """A calibration stack carries no usable (unsaturated) observations."""


class CrfFormatError(ValueError):
    """A response curve violates its invariants or a CRF file is malformed."""


def _check_lut(lut: FloatArray) -> None:
    if lut.shape != (LUT_SIZE,):
        raise CrfFormatError(f"Inverse response LUT must have {LUT_SIZE} entries, got shape {lut.shape}")
    if not np.all(np.isfinite(lut)):
        raise CrfFormatError("Inverse response LUT contains non-finite values")
    if lut[0] < 0.0:
        raise CrfFormatError(f"Inverse response LUT must be non-negative, lut[0] = {lut[0]}")
    if lut[DN_MAX] != 1.0:
        raise CrfFormatError(f"Inverse response LUT must be normalized to lut[{DN_MAX}] = 1.0, got {lut[DN_MAX]}")

    decreasing = np.flatnonzero(np.diff(lut) < 0.0)
    if len(decreasing) > 0:
        dn = int(decreasing[0]) + 1
        raise CrfFormatError(f"Inverse response LUT is not monotone: lut[{dn}] < lut[{dn - 1}]")


@dataclass(frozen=True, eq=False)
class ResponseCurve:
    """The inverse camera response `f^-1` as a 4096-entry lookup table.

    `inverse_lut[dn]` is the relative exposure (unitless, normalized so that
    `inverse_lut[4095] == 1.0`) that produces `dn`. The table is monotone
    non-decreasing. Instances are immutable and safe to share between threads.
    """

    inverse_lut: FloatArray

    def __post_init__(self) -> None:
        lut = np.array(self.inverse_lut, dtype=np.float64)
        _check_lut(lut)
        lut.setflags(write=False)
        object.__setattr__(self, "inverse_lut", lut)

    def equals(self, other: "ResponseCurve") -> bool:
        """Bit-exact comparison of two curves."""
        return bool(np.array_equal(self.inverse_lut, other.inverse_lut))


@dataclass(eq=False)
class RawImage:
    """A single-channel 12-bit image tagged with its exposure time.

    `data` is row-major with shape (height, width) in a 16-bit container.
    """

    data: DnArray
    exposure: float
    """Exposure time in microseconds."""

    timestamp: int = 0
    """Capture time in nanoseconds."""

    frame_index: int = 0

    def __post_init__(self) -> None:
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise ValueError(f"Image data must be two-dimensional, got shape {data.shape}")
        if data.size == 0:
            raise ValueError("Image data is empty")
        if not np.issubdtype(data.dtype, np.integer):
            raise ValueError(f"Image data must be integral digital numbers, got {data.dtype}")
        if data.min() < 0 or data.max() > DN_MAX:
            raise ValueError(f"Image digital numbers must lie in [0, {DN_MAX}]")
        if not self.exposure > 0.0:
            raise ValueError(f"Exposure must be positive, got {self.exposure} us")

        self.data = data.astype(np.uint16, copy=False)
        self.exposure = float(self.exposure)

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def normalized(self) -> FloatArray:
        """DN scaled to [0, 1]."""
        return self.data.astype(np.float64) / DN_MAX

    def same_pixels(self, other: "RawImage") -> bool:
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))


@dataclass(eq=False)
class RadianceImage:
    """Relative scene radiance per pixel with an optional vignetting field."""

    data: FloatArray
    vignette: Optional[FloatArray] = field(default=None)

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"Radiance must be two-dimensional, got shape {data.shape}")
        if np.any(data < 0.0) or not np.all(np.isfinite(data)):
            raise ValueError("Radiance values must be finite and non-negative")
        self.data = data

        if self.vignette is not None:
            vignette = np.asarray(self.vignette, dtype=np.float64)
            if vignette.shape != data.shape:
                raise ValueError(f"Vignette shape {vignette.shape} does not match radiance shape {data.shape}")
            if np.any(vignette <= 0.0) or np.any(vignette > 1.0):
                raise ValueError("Vignette values must lie in (0, 1]")
            self.vignette = vignette

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])


@dataclass
class CalibrationStack:
    """Images of one static scene at strictly increasing exposure times."""

    images: list[RawImage]

    def __post_init__(self) -> None:
        if len(self.images) < 3:
            raise CalibrationInsufficientError(
                f"CRF calibration needs at least 3 exposures of a static scene, got {len(self.images)}"
            )

        shape = self.images[0].shape
        for img in self.images[1:]:
            if img.shape != shape:
                raise ValueError(f"Calibration images differ in size: {img.shape} != {shape}")

        exposures = [img.exposure for img in self.images]
        for a, b in zip(exposures, exposures[1:]):
            if not b > a:
                raise ValueError(f"Calibration exposures must be strictly increasing, got {exposures}")

    @property
    def exposures(self) -> list[float]:
        return [img.exposure for img in self.images]
