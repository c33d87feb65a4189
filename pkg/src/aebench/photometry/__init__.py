from .model import (
    DN_MAX,
    LUT_SIZE,
    CalibrationInsufficientError,
    CalibrationStack,
    CrfFormatError,
    DegenerateStackError,
    DnArray,
    FloatArray,
    RadianceImage,
    RawImage,
    ResponseCurve,
)
from .response import (
    CrfKind,
    dn_to_exposure,
    dns_to_exposures,
    exposure_to_dn,
    exposures_to_dns,
    make_parametric_crf,
    parse_crf_spec,
)
from .estimate import DEFAULT_LAMBDA_SMOOTH, DEFAULT_SAMPLE_COUNT, estimate_inverse_crf, hat_weights
from .io import crf_from_csv, crf_to_csv, load_crf, save_crf

__all__ = [
    "DEFAULT_LAMBDA_SMOOTH",
    "DEFAULT_SAMPLE_COUNT",
    "DN_MAX",
    "LUT_SIZE",
    "CalibrationInsufficientError",
    "CalibrationStack",
    "CrfFormatError",
    "CrfKind",
    "DegenerateStackError",
    "DnArray",
    "FloatArray",
    "RadianceImage",
    "RawImage",
    "ResponseCurve",
    "crf_from_csv",
    "crf_to_csv",
    "dn_to_exposure",
    "dns_to_exposures",
    "estimate_inverse_crf",
    "exposure_to_dn",
    "exposures_to_dns",
    "hat_weights",
    "load_crf",
    "make_parametric_crf",
    "parse_crf_spec",
    "save_crf",
]
