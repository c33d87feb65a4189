"""Measure emulation error against ground-truth captures.

A static scene is captured once as a bracket cycle and many times as a sweep
of ground-truth exposures. Each sweep image is emulated from the cycle, both
through HigherNoSat and from every single bracket, and compared by RMSE
(percent of the 12-bit range). The sensor noise floor, measured as the RMSE
between repeated captures at one exposure, is subtracted from the HigherNoSat
curve.
"""

import logging

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from aebench.photometry import DN_MAX, LUT_SIZE, FloatArray, RawImage, ResponseCurve

from .emulate import emulate, select_bracket_higher_no_sat
from .model import DEFAULT_SAT_THRESHOLD, BracketCycle

LOG = logging.getLogger(__name__)

HISTOGRAM_BINS = 64


def rmse_percent(a: RawImage, b: RawImage) -> float:
    """Root-mean-square DN difference as a percentage of the full 12-bit range."""
    if a.shape != b.shape:
        raise ValueError(f"Cannot compare images of different sizes: {a.shape} != {b.shape}")
    diff = a.data.astype(np.float64) - b.data.astype(np.float64)
    return float(np.sqrt(np.mean(diff * diff)) / DN_MAX * 100.0)


def noise_floor(repeats: Sequence[RawImage]) -> float:
    """Mean RMSE between consecutive captures of one scene at one exposure."""
    if len(repeats) < 2:
        raise ValueError(f"Noise floor needs at least 2 repeated captures, got {len(repeats)}")

    exposure = repeats[0].exposure
    for img in repeats[1:]:
        if img.exposure != exposure:
            raise ValueError(f"Noise floor repeats must share one exposure, got {exposure} and {img.exposure} us")
        if img.shape != repeats[0].shape:
            raise ValueError("Noise floor repeats must share one image size")

    errors = [rmse_percent(a, b) for a, b in zip(repeats, repeats[1:])]
    return float(np.mean(errors))


def dn_histogram(img: RawImage, bins: int = HISTOGRAM_BINS) -> FloatArray:
    """Normalized DN histogram with `bins` equal-width bins over [0, 4096)."""
    counts = np.bincount(img.data.reshape(-1).astype(np.int64) * bins // LUT_SIZE, minlength=bins)
    return counts.astype(np.float64) / img.data.size


@dataclass
class ValidationPoint:
    gt_exposure_us: float
    rmse_highernosat_pct: float
    """HigherNoSat RMSE minus the noise floor, floored at zero."""

    rmse_brackets_pct: list[float]
    """RMSE when always emulating from bracket k, before noise subtraction."""

    selected_index: int
    noise_floor_pct: float = 0.0
    histogram_intersection: float = 1.0
    """Overlap in [0, 1] between the ground-truth and emulated DN distributions."""

    gt_histogram: Optional[FloatArray] = field(default=None, repr=False)
    emulated_histogram: Optional[FloatArray] = field(default=None, repr=False)

    @property
    def rmse_selected_pct(self) -> float:
        return self.rmse_brackets_pct[self.selected_index]

    def selection_rank(self) -> int:
        """0 if HigherNoSat chose the best bracket, 1 for the second best, etc.

        Ties count in favour of the selected bracket.
        """
        return int(np.count_nonzero(np.asarray(self.rmse_brackets_pct) < self.rmse_selected_pct))


@dataclass
class EmulationValidationReport:
    ladder_us: tuple[float, ...]
    points: list[ValidationPoint]

    @property
    def median_pct(self) -> float:
        return float(np.median([p.rmse_highernosat_pct for p in self.points]))

    @property
    def max_pct(self) -> float:
        return float(np.max([p.rmse_highernosat_pct for p in self.points]))

    def selector_quality(self, top: int = 2) -> float:
        """Fraction of points where HigherNoSat picked one of the `top` best brackets."""
        return float(np.mean([p.selection_rank() < top for p in self.points]))


def validate_emulation(
    sweep: Sequence[RawImage],
    cycle: BracketCycle,
    crf: ResponseCurve,
    noise_floors: Optional[Sequence[float] | float] = None,
    sat_threshold: float = DEFAULT_SAT_THRESHOLD,
) -> EmulationValidationReport:
    """Compare emulations from `cycle` against every ground-truth image of `sweep`.

    Args:
        sweep: Ground-truth captures of the same static scene as `cycle`.
        cycle: The bracket cycle used as the emulation source.
        crf: Inverse response used by the emulator.
        noise_floors: One noise floor per sweep image, a single value for all
            of them, or None for no subtraction.
        sat_threshold: HigherNoSat saturation threshold.
    """
    if len(sweep) == 0:
        raise ValueError("The ground-truth sweep is empty")

    if noise_floors is None:
        floors = [0.0] * len(sweep)
    elif isinstance(noise_floors, (int, float)):
        floors = [float(noise_floors)] * len(sweep)
    else:
        floors = [float(f) for f in noise_floors]
        if len(floors) != len(sweep):
            raise ValueError(f"Got {len(floors)} noise floors for {len(sweep)} sweep images")

    points: list[ValidationPoint] = []
    for gt, floor in zip(sweep, floors):
        if gt.shape != cycle.shape:
            raise ValueError(f"Sweep image size {gt.shape} does not match the cycle size {cycle.shape}")

        emulations = [emulate(src, gt.exposure, crf) for src in cycle.images]
        per_bracket = [rmse_percent(e, gt) for e in emulations]
        selected = select_bracket_higher_no_sat(cycle, gt.exposure, sat_threshold)

        gt_hist = dn_histogram(gt)
        emul_hist = dn_histogram(emulations[selected])

        points.append(
            ValidationPoint(
                gt_exposure_us=gt.exposure,
                rmse_highernosat_pct=max(per_bracket[selected] - floor, 0.0),
                rmse_brackets_pct=per_bracket,
                selected_index=selected,
                noise_floor_pct=floor,
                histogram_intersection=float(np.minimum(gt_hist, emul_hist).sum()),
                gt_histogram=gt_hist,
                emulated_histogram=emul_hist,
            )
        )

    report = EmulationValidationReport(cycle.exposures, points)
    LOG.info(
        f"Emulation validation over {len(points)} exposures: median {report.median_pct:.3f} %, "
        f"max {report.max_pct:.3f} %, selector in top-2 for {report.selector_quality() * 100:.1f} %"
    )
    return report
