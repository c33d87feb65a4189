import numpy as np
import pytest

from aebench.photometry import (
    DN_MAX,
    LUT_SIZE,
    CalibrationInsufficientError,
    CalibrationStack,
    CrfFormatError,
    RadianceImage,
    RawImage,
    ResponseCurve,
)


def _image(value: int, exposure: float, shape: tuple[int, int] = (8, 8)) -> RawImage:
    return RawImage(np.full(shape, value, dtype=np.uint16), exposure)


def test_response_curve_invariants():
    """A curve must have 4096 finite, non-negative, non-decreasing entries ending at 1."""
    lut = np.linspace(0.0, 1.0, LUT_SIZE)
    ResponseCurve(lut)

    with pytest.raises(CrfFormatError):
        ResponseCurve(lut[:-1])

    unnormalized = lut * 0.9
    with pytest.raises(CrfFormatError):
        ResponseCurve(unnormalized)

    bumpy = lut.copy()
    bumpy[100] = bumpy[102]
    with pytest.raises(CrfFormatError):
        ResponseCurve(bumpy)

    negative = lut.copy()
    negative[0] = -0.1
    with pytest.raises(CrfFormatError):
        ResponseCurve(negative)


def test_response_curve_is_immutable():
    """The stored table cannot be written to and does not alias the input."""
    lut = np.linspace(0.0, 1.0, LUT_SIZE)
    crf = ResponseCurve(lut)
    lut[5] = 0.5
    assert crf.inverse_lut[5] == pytest.approx(5 / DN_MAX)
    with pytest.raises(ValueError):
        crf.inverse_lut[5] = 0.0


def test_raw_image_validation():
    """Raw images are 2-D integer DNs within 12 bits with a positive exposure."""
    img = _image(DN_MAX, 1000.0, (3, 5))
    assert img.shape == (3, 5)
    assert img.width == 5
    assert img.height == 3
    assert img.normalized().max() == 1.0

    with pytest.raises(ValueError):
        RawImage(np.zeros((2, 2, 2), dtype=np.uint16), 1000.0)
    with pytest.raises(ValueError):
        RawImage(np.full((2, 2), DN_MAX + 1, dtype=np.uint16), 1000.0)
    with pytest.raises(ValueError):
        RawImage(np.zeros((2, 2), dtype=np.float64), 1000.0)
    with pytest.raises(ValueError):
        _image(0, 0.0)


def test_radiance_image_validation():
    """Radiance is non-negative and a vignette must match its shape and lie in (0, 1]."""
    RadianceImage(np.ones((4, 4)), np.full((4, 4), 0.5))
    with pytest.raises(ValueError):
        RadianceImage(np.full((4, 4), -1.0))
    with pytest.raises(ValueError):
        RadianceImage(np.ones((4, 4)), np.ones((3, 4)))
    with pytest.raises(ValueError):
        RadianceImage(np.ones((4, 4)), np.zeros((4, 4)))


def test_calibration_stack_checks():
    """Stacks need three or more same-sized images at strictly increasing exposures."""
    stack = CalibrationStack([_image(100, 1000.0), _image(200, 2000.0), _image(400, 4000.0)])
    assert stack.exposures == [1000.0, 2000.0, 4000.0]

    with pytest.raises(CalibrationInsufficientError):
        CalibrationStack([_image(100, 1000.0), _image(200, 2000.0)])
    with pytest.raises(ValueError):
        CalibrationStack([_image(100, 1000.0), _image(200, 1000.0), _image(400, 4000.0)])
    with pytest.raises(ValueError):
        CalibrationStack([_image(100, 1000.0), _image(200, 2000.0), _image(400, 4000.0, (4, 4))])
