import numpy as np
import pytest

from aebench.emulation import (
    DEFAULT_LADDER_US,
    BracketCycle,
    emulate,
    emulate_from_cycle,
    emulation_table,
    saturation_stats,
    select_bracket_higher_no_sat,
)
from aebench.photometry import DN_MAX, RawImage, exposures_to_dns, make_parametric_crf

GAMMA = make_parametric_crf("gamma", 2.2)


def _ramp(exposure: float = 8000.0) -> RawImage:
    """A noiseless radiance ramp reaching relative exposure 0.01 .. 0.96 at 8 ms."""
    rate = np.linspace(0.01, 0.96, 64 * 48).reshape(48, 64) / 8000.0
    return RawImage(exposures_to_dns(rate * exposure, GAMMA), exposure)


def _cycle(saturated: dict[int, float]) -> BracketCycle:
    """Uniform mid-grey brackets; bracket k has `saturated[k]` of its pixels at DN 4095."""
    images: list[RawImage] = []
    for k, t in enumerate(DEFAULT_LADDER_US):
        data = np.full((20, 50), 2000, dtype=np.uint16)
        clipped = int(round(saturated.get(k, 0.0) * data.size))
        data.reshape(-1)[:clipped] = DN_MAX
        images.append(RawImage(data, t))
    return BracketCycle(images, cycle_index=3)


def test_identity_at_source_exposure():
    """Emulating at the source exposure returns the same pixels in a new array."""
    source = _ramp()
    out = emulate(source, source.exposure, GAMMA)
    assert out.same_pixels(source)
    assert out.data is not source.data


def test_emulation_matches_direct_capture():
    """Halving the exposure of a noiseless ramp matches a direct capture within 2 DN."""
    emulated = emulate(_ramp(8000.0), 4000.0, GAMMA)
    truth = _ramp(4000.0)
    diff = np.abs(emulated.data.astype(np.int64) - truth.data.astype(np.int64))
    assert emulated.exposure == 4000.0
    assert diff.max() <= 2


def test_emulation_is_monotone_in_exposure():
    """Longer target exposures never darken a pixel."""
    source = _ramp()
    previous = emulate(source, 100.0, GAMMA).data
    for target in np.geomspace(100.0, 60000.0, 25)[1:]:
        current = emulate(source, float(target), GAMMA).data
        assert np.all(current >= previous)
        previous = current


def test_emulation_table_saturates():
    """Doubling the exposure of a saturated pixel keeps it saturated, zero stays zero."""
    table = emulation_table(2.0, GAMMA)
    assert table[DN_MAX] == DN_MAX
    assert table[0] == 0
    assert len(table) == DN_MAX + 1


def test_emulate_keeps_frame_metadata():
    """Timestamp and frame index follow the source image."""
    source = RawImage(np.full((4, 4), 100, dtype=np.uint16), 1000.0, timestamp=55, frame_index=9)
    out = emulate(source, 3000.0, GAMMA)
    assert out.timestamp == 55
    assert out.frame_index == 9


def test_bad_target_exposure():
    with pytest.raises(ValueError):
        emulate(_ramp(), 0.0, GAMMA)
    with pytest.raises(ValueError):
        select_bracket_higher_no_sat(_cycle({}), -5.0)


def test_higher_no_sat_outside_ladder():
    """Targets outside the ladder use the nearest end bracket."""
    cycle = _cycle({})
    assert select_bracket_higher_no_sat(cycle, 20.0) == 0
    assert select_bracket_higher_no_sat(cycle, 1000.0) == 0
    assert select_bracket_higher_no_sat(cycle, 50000.0) == 5


def test_higher_no_sat_exact_bracket():
    """A target equal to a bracket exposure selects that bracket even when it saturates."""
    cycle = _cycle({3: 0.5})
    assert select_bracket_higher_no_sat(cycle, 8000.0) == 3


def test_higher_no_sat_prefers_higher_bracket():
    """Between two brackets, the longer one wins unless it saturates."""
    cycle = _cycle({3: 0.5, 4: 0.005})
    assert select_bracket_higher_no_sat(cycle, 3000.0) == 2
    assert select_bracket_higher_no_sat(cycle, 6000.0) == 2
    assert select_bracket_higher_no_sat(cycle, 12000.0) == 4


def test_higher_no_sat_threshold_is_strict():
    """A bracket saturated at exactly the threshold is rejected."""
    cycle = _cycle({3: 0.01})
    assert select_bracket_higher_no_sat(cycle, 6000.0, sat_threshold=0.01) == 2
    assert select_bracket_higher_no_sat(cycle, 6000.0, sat_threshold=0.02) == 3


def test_emulate_from_cycle():
    cycle = _cycle({})
    out = emulate_from_cycle(cycle, 6000.0, GAMMA)
    assert out.source_index == 3
    assert out.source_exposure == 8000.0
    assert out.image.exposure == 6000.0


def test_saturation_counts_both_ends():
    data = np.array([[0, 0, 10, DN_MAX]], dtype=np.uint16)
    stats = saturation_stats(RawImage(data, 100.0))
    assert stats.under_count == 2
    assert stats.over_count == 1
    assert stats.fraction == pytest.approx(0.75)


def test_bracket_cycle_checks():
    """Exposures must increase, match the ladder and share one image size."""
    a = RawImage(np.zeros((4, 4), dtype=np.uint16), 1000.0)
    b = RawImage(np.zeros((4, 4), dtype=np.uint16), 2000.0)
    small = RawImage(np.zeros((2, 2), dtype=np.uint16), 2000.0)

    assert BracketCycle([a, b]).ladder == (1000.0, 2000.0)
    with pytest.raises(ValueError):
        BracketCycle([b, a])
    with pytest.raises(ValueError):
        BracketCycle([a, b], ladder=(1000.0, 4000.0))
    with pytest.raises(ValueError):
        BracketCycle([a, small])
    with pytest.raises(ValueError):
        BracketCycle([])


LINEAR = make_parametric_crf("linear")
ALL_DNS = RawImage(np.arange(DN_MAX + 1, dtype=np.uint16).reshape(64, 64), 4000.0)


def _composition_error(crf, via_exposure: float, target: float) -> int:
    """Largest |emulate(emulate(I, t1), t2) - emulate(I, t2)| over pixels unclipped at t1 and at t2."""
    via = emulate(ALL_DNS, via_exposure, crf)
    composed = emulate(via, target, crf).data.astype(np.int64)
    direct = emulate(ALL_DNS, target, crf).data.astype(np.int64)
    valid = (via.data > 0) & (via.data < DN_MAX) & (direct < DN_MAX)
    assert np.count_nonzero(valid) > 1000
    return int(np.abs(composed - direct)[valid].max())


@pytest.mark.parametrize(
    "crf,via_exposure,target",
    [
        (LINEAR, 2000.0, 3000.0),
        (LINEAR, 3000.0, 1000.0),
        (LINEAR, 8000.0, 5000.0),
        (LINEAR, 6000.0, 8000.0),
        (LINEAR, 1000.0, 1500.0),
        (LINEAR, 5000.0, 2000.0),
        (GAMMA, 1000.0, 2000.0),
        (GAMMA, 2000.0, 4500.0),
        (GAMMA, 3000.0, 7000.0),
        (GAMMA, 8000.0, 1000.0),
        (GAMMA, 6000.0, 12000.0),
    ],
)
def test_two_hops_agree_with_one(crf, via_exposure, target):
    """Re-emulating an emulated image stays within 2 DN of emulating the source directly.

    The bound needs the second hop to stretch digital numbers by at most 1.5x:
    `t2 / t1 <= 1.5` for a linear response, `(t2 / t1) ** (1 / 2.2) <= 1.5` for gamma 2.2.
    """
    assert _composition_error(crf, via_exposure, target) <= 2


def test_two_hops_drift_with_a_large_second_stretch():
    """A quarter-exposure hop floors away the two low bits of each DN; stretching 8x turns them into up to 6 DN."""
    assert _composition_error(LINEAR, 1000.0, 8000.0) == 6
