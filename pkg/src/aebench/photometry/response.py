"""Evaluate `f` and `f^-1` through a ResponseCurve, and build parametric curves."""

from enum import StrEnum
from typing import Optional

import numpy as np
import numpy.typing as npt

from .model import DN_MAX, LUT_SIZE, DnArray, FloatArray, ResponseCurve


class CrfKind(StrEnum):
    """Closed-form response curves used as ground truth for synthetic data."""

    LINEAR = "linear"
    GAMMA = "gamma"
    S_CURVE = "s-curve"


def dn_to_exposure(dn: int, crf: ResponseCurve) -> float:
    """Relative exposure `f^-1(dn)`."""
    if not 0 <= dn <= DN_MAX:
        raise ValueError(f"Digital number {dn} outside [0, {DN_MAX}]")
    return float(crf.inverse_lut[dn])


def exposure_to_dn(x: float, crf: ResponseCurve) -> int:
    """Digital number `f(x)`: the largest DN whose LUT entry does not exceed `x`.

    Exposures at or beyond 1.0 saturate at 4095.
    """
    if not x >= 0.0:
        raise ValueError(f"Relative exposure must be non-negative, got {x}")
    return int(exposures_to_dns(np.asarray([x], dtype=np.float64), crf)[0])


def dns_to_exposures(dns: npt.NDArray[np.integer], crf: ResponseCurve) -> FloatArray:
    """Vectorized `dn_to_exposure`."""
    return crf.inverse_lut[dns]


def exposures_to_dns(x: FloatArray, crf: ResponseCurve) -> DnArray:
    """Vectorized `exposure_to_dn`; negative inputs clamp to 0."""
    idx = np.searchsorted(crf.inverse_lut, x, side="right") - 1
    return np.clip(idx, 0, DN_MAX).astype(np.uint16)


def make_parametric_crf(kind: CrfKind | str, param: Optional[float] = None) -> ResponseCurve:
    """Build a closed-form inverse response.

    - linear: `lut[d] = d / 4095`
    - gamma(g): `lut[d] = (d / 4095) ** g`
    - s-curve(a): inverse of a logistic response of steepness `a`, rescaled to
      pass through (0, 0) and (1, 1).
    """
    kind = CrfKind(kind)
    u = np.arange(LUT_SIZE, dtype=np.float64) / DN_MAX

    if kind == CrfKind.LINEAR:
        lut = u

    elif kind == CrfKind.GAMMA:
        g = 2.2 if param is None else float(param)
        if not g > 0.0:
            raise ValueError(f"Gamma must be positive, got {g}")
        lut = u**g

    else:
        a = 6.0 if param is None else float(param)
        if not a > 0.0:
            raise ValueError(f"S-curve steepness must be positive, got {a}")
        lo = 1.0 / (1.0 + np.exp(a / 2.0))
        hi = 1.0 / (1.0 + np.exp(-a / 2.0))
        p = lo + u * (hi - lo)
        with np.errstate(divide="ignore"):
            lut = 0.5 + np.log(p / (1.0 - p)) / a

    lut = np.maximum.accumulate(np.clip(lut, 0.0, 1.0))
    lut[0] = 0.0
    lut[DN_MAX] = 1.0
    return ResponseCurve(lut)


def parse_crf_spec(spec: str) -> ResponseCurve:
    """Parse `linear`, `gamma:2.2` or `s-curve:6` into a parametric curve."""
    name, _, value = spec.partition(":")
    return make_parametric_crf(name.strip(), float(value) if value else None)
