"""Dataclasses for bracketed captures and emulated images."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from aebench.photometry import DN_MAX, RawImage

DEFAULT_LADDER_US: tuple[float, ...] = (1000.0, 2000.0, 4000.0, 8000.0, 16000.0, 32000.0)
"""The bracketing ladder {1, 2, 4, 8, 16, 32} ms, in microseconds."""

DEFAULT_SAT_THRESHOLD = 0.01


@dataclass(frozen=True)
class SaturationStats:
    """Counts of clipped pixels: DN 0 (under) and DN 4095 (over)."""

    under_count: int
    over_count: int
    total: int

    @property
    def fraction(self) -> float:
        return (self.under_count + self.over_count) / self.total


def saturation_stats(img: RawImage) -> SaturationStats:
    under = int(np.count_nonzero(img.data == 0))
    over = int(np.count_nonzero(img.data == DN_MAX))
    return SaturationStats(under, over, int(img.data.size))


@dataclass(eq=False)
class BracketCycle:
    """One bracketing cycle: one image per ladder exposure, in ladder order."""

    images: list[RawImage]
    cycle_index: int = 0
    ladder: Optional[tuple[float, ...]] = None
    """Defaults to the exposures of `images`."""

    _saturation: Optional[list[SaturationStats]] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.images) == 0:
            raise ValueError("A bracket cycle needs at least one image")

        exposures = tuple(img.exposure for img in self.images)
        for a, b in zip(exposures, exposures[1:]):
            if not b > a:
                raise ValueError(f"Bracket exposures must be strictly increasing, got {exposures}")

        if self.ladder is None:
            self.ladder = exposures
        elif tuple(float(e) for e in self.ladder) != exposures:
            raise ValueError(f"Bracket exposures {exposures} do not match the ladder {self.ladder}")

        shape = self.images[0].shape
        for img in self.images[1:]:
            if img.shape != shape:
                raise ValueError(f"Bracket images differ in size: {img.shape} != {shape}")

    @property
    def exposures(self) -> tuple[float, ...]:
        return tuple(img.exposure for img in self.images)

    @property
    def shape(self) -> tuple[int, int]:
        return self.images[0].shape

    def saturation(self) -> list[SaturationStats]:
        """Saturation statistics per bracket, computed once."""
        if self._saturation is None:
            self._saturation = [saturation_stats(img) for img in self.images]
        return self._saturation

    def __len__(self) -> int:
        return len(self.images)


@dataclass(eq=False)
class EmulatedImage:
    image: RawImage
    """The emulated image; its exposure is the requested target."""

    source_index: int
    source_exposure: float
    """Exposure of the source bracket in microseconds."""
