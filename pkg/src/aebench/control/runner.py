"""Closed-loop replay of a controller over bracketed cycles.

For each cycle, the frame at the controller's current exposure is emulated
from the cycle's brackets, recorded, and handed to the controller, whose
decision becomes the exposure of the next cycle.
"""

import csv
import io
import logging
import math

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from aebench.emulation import BracketCycle, EmulatedImage, emulate_from_cycle, saturation_stats
from aebench.photometry import RawImage, ResponseCurve

from .config import AEConfig
from .controllers import AEController, AEDecision
from .metrics import mean_brightness

LOG = logging.getLogger(__name__)

RUN_HEADER = [
    "frame",
    "cycle",
    "exposure_us",
    "source_bracket_us",
    "metric_value",
    "mean_brightness",
    "saturation_fraction",
]


@dataclass(eq=False)
class ControlStep:
    frame: int
    cycle_index: int
    emulated: EmulatedImage
    decision: AEDecision
    mean_brightness: float
    saturation_fraction: float

    @property
    def exposure(self) -> float:
        return self.emulated.image.exposure


def run_controller(
    cycles: Sequence[BracketCycle], controller: AEController, crf: ResponseCurve
) -> list[ControlStep]:
    """Run `controller` over `cycles`; one emulated frame per cycle."""
    if len(cycles) == 0:
        raise ValueError("Cannot run a controller over an empty sequence")

    controller.reset()
    sat = controller.config.sat_threshold
    exposure = controller.initial_exposure(cycles[0])

    steps: list[ControlStep] = []
    for k, cycle in enumerate(cycles):
        emulated = emulate_from_cycle(cycle, exposure, crf, sat)
        decision = controller.step(emulated.image, cycle)
        steps.append(
            ControlStep(
                frame=k,
                cycle_index=cycle.cycle_index,
                emulated=emulated,
                decision=decision,
                mean_brightness=mean_brightness(emulated.image),
                saturation_fraction=saturation_stats(emulated.image).fraction,
            )
        )
        exposure = decision.next_exposure

    LOG.info(
        f"{controller.kind}: {len(steps)} frames, exposure {min(s.exposure for s in steps):.1f} .. "
        f"{max(s.exposure for s in steps):.1f} us"
    )
    return steps


def frames_of(steps: Sequence[ControlStep]) -> list[RawImage]:
    return [s.emulated.image for s in steps]


def run_csv(steps: Sequence[ControlStep]) -> str:
    """Per-frame CSV with the columns of `RUN_HEADER`."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RUN_HEADER)
    for s in steps:
        writer.writerow(
            [
                s.frame,
                s.cycle_index,
                repr(s.exposure),
                repr(s.emulated.source_exposure),
                repr(s.decision.metric_value),
                f"{s.mean_brightness:.6f}",
                f"{s.saturation_fraction:.6f}",
            ]
        )
    return buf.getvalue()


@dataclass
class RunStatistics:
    """Exposure and saturation statistics of one controller, accumulated run by run."""

    sequences: int = 0
    frames: int = 0
    exposure_min_us: float = math.inf
    exposure_max_us: float = 0.0
    exposures: set[float] = field(default_factory=set[float])
    brightness_sum: float = 0.0
    saturation_sum: float = 0.0

    def add(self, steps: Sequence[ControlStep]) -> "RunStatistics":
        self.sequences += 1
        for s in steps:
            self.frames += 1
            low, high = sorted((s.exposure, s.decision.next_exposure))
            self.exposure_min_us = min(self.exposure_min_us, low)
            self.exposure_max_us = max(self.exposure_max_us, high)
            self.exposures.add(s.exposure)
            self.brightness_sum += s.mean_brightness
            self.saturation_sum += s.saturation_fraction
        return self

    @property
    def mean_saturation(self) -> float:
        return self.saturation_sum / self.frames if self.frames > 0 else 0.0

    def as_dict(self) -> dict[str, Any]:
        return {
            "sequences": self.sequences,
            "frames": self.frames,
            "exposure_min_us": self.exposure_min_us,
            "exposure_max_us": self.exposure_max_us,
            "distinct_exposures": len(self.exposures),
            "mean_brightness": self.brightness_sum / self.frames if self.frames > 0 else 0.0,
            "mean_saturation": self.mean_saturation,
        }


def runs_summary(stats: Mapping[str, RunStatistics], config: AEConfig) -> dict[str, Any]:
    """Per-controller statistics with the exposure range they must respect."""
    return {
        "exposure_range_us": [config.exposure_min, config.exposure_max],
        "controllers": {name: s.as_dict() for name, s in stats.items() if s.frames > 0},
    }
