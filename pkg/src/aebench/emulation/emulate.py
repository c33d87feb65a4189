"""Exposure emulation and HigherNoSat bracket selection.

An image at any target exposure is obtained from a source image through

    I_target = f((dt_target / dt_source) * f^-1(I_source))

Vignetting cancels pixel by pixel, so it does not appear. The source is chosen
among the brackets of a cycle with HigherNoSat: for a target between two
brackets, take the longer one unless more than `sat_threshold` of its pixels
are clipped; outside the ladder, take the closest bracket.
"""

import bisect
import logging

from aebench.photometry import DnArray, RawImage, ResponseCurve, exposures_to_dns

from .model import DEFAULT_SAT_THRESHOLD, BracketCycle, EmulatedImage

LOG = logging.getLogger(__name__)


def emulation_table(ratio: float, crf: ResponseCurve) -> DnArray:
    """The DN -> DN mapping for an exposure ratio, as a 4096-entry table."""
    return exposures_to_dns(ratio * crf.inverse_lut, crf)


def emulate(source: RawImage, target_exposure: float, crf: ResponseCurve) -> RawImage:
    """Emulate `source` at `target_exposure` microseconds.

    Saturated source pixels go through the same mapping; the output is clamped
    to [0, 4095] by the quantizer.

    Each call floors to a DN, so emulating an emulated image drifts from
    emulating the source directly by at most `s + 1` DN on unclipped pixels,
    where `s` is the factor by which the second call stretches DNs.
    """
    if not target_exposure > 0.0:
        raise ValueError(f"Target exposure must be positive, got {target_exposure} us")

    if target_exposure == source.exposure:
        data = source.data.copy()
    else:
        table = emulation_table(target_exposure / source.exposure, crf)
        data = table[source.data]

    return RawImage(data, target_exposure, timestamp=source.timestamp, frame_index=source.frame_index)


def select_bracket_higher_no_sat(
    cycle: BracketCycle, target_exposure: float, sat_threshold: float = DEFAULT_SAT_THRESHOLD
) -> int:
    """Index of the bracket to emulate `target_exposure` from."""
    if len(cycle.images) == 0:
        raise ValueError("Cannot select a bracket from an empty cycle")
    if not target_exposure > 0.0:
        raise ValueError(f"Target exposure must be positive, got {target_exposure} us")

    exposures = cycle.exposures
    if target_exposure <= exposures[0]:
        return 0
    if target_exposure >= exposures[-1]:
        return len(exposures) - 1

    higher = bisect.bisect_left(exposures, target_exposure)
    if exposures[higher] == target_exposure:
        return higher

    if cycle.saturation()[higher].fraction < sat_threshold:
        return higher
    return higher - 1


def emulate_from_cycle(
    cycle: BracketCycle,
    target_exposure: float,
    crf: ResponseCurve,
    sat_threshold: float = DEFAULT_SAT_THRESHOLD,
) -> EmulatedImage:
    index = select_bracket_higher_no_sat(cycle, target_exposure, sat_threshold)
    source = cycle.images[index]
    LOG.debug(f"Cycle {cycle.cycle_index}: emulating {target_exposure:.1f} us from bracket {source.exposure:.1f} us")
    return EmulatedImage(emulate(source, target_exposure, crf), index, source.exposure)
