"""Estimate the inverse camera response from a stack of exposures.

The estimator solves, in the log domain,

    g(Z_ij) - ln E_i = ln dt_j

for the log inverse response `g` and the log radiance `E_i` of each sampled
pixel, with a second-difference smoothness term on `g`. Every equation is
weighted by a hat function so that DNs near 0 and 4095 count the least. Only
DN bins actually observed in the samples are unknowns; the rest of the table is
filled by interpolation, then projected onto monotone curves by isotonic
regression and normalized so that `f^-1(4095) == 1`.

Example:
    stack = CalibrationStack(images)
    crf = estimate_inverse_crf(stack)
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from scipy.optimize import isotonic_regression

from .model import (
    DN_MAX,
    LUT_SIZE,
    CalibrationStack,
    DegenerateStackError,
    FloatArray,
    ResponseCurve,
)

LOG = logging.getLogger(__name__)

DEFAULT_LAMBDA_SMOOTH = 50.0
DEFAULT_SAMPLE_COUNT = 256

# Width (in DN) of the window used to extrapolate above the brightest observed bin.
_TOP_FIT_SPAN = 256


def hat_weights(z: npt.NDArray[np.integer] | FloatArray) -> FloatArray:
    """Triangle weighting, 0 at DN 0 and 4095 and 1 at mid-range."""
    zf = np.asarray(z, dtype=np.float64)
    return np.minimum(zf, DN_MAX - zf) / (DN_MAX / 2.0)


def sample_pixels(stack: CalibrationStack, sample_count: int) -> npt.NDArray[np.uint16]:
    """Pick `sample_count` pixels on a uniform spatial grid.

    Pixels that are never strictly inside (0, 4095) in any image carry no
    information and are skipped. Returns an array of shape (pixels, images).
    """
    height, width = stack.images[0].shape
    values = np.stack([img.data.reshape(-1) for img in stack.images], axis=1)

    # Oversample the grid so that dropping saturated pixels still leaves enough.
    aspect = width / height
    rows = max(1, min(height, math.ceil(math.sqrt(4 * sample_count / aspect))))
    cols = max(1, min(width, math.ceil(4 * sample_count / rows)))
    ys = np.unique(np.linspace(0, height - 1, rows).round().astype(np.int64))
    xs = np.unique(np.linspace(0, width - 1, cols).round().astype(np.int64))
    grid = (ys[:, None] * width + xs[None, :]).reshape(-1)

    candidates = values[grid]
    usable = np.any((candidates > 0) & (candidates < DN_MAX), axis=1)
    candidates = candidates[usable]

    if len(candidates) == 0:
        raise DegenerateStackError("Every sampled pixel is saturated in every calibration image")

    if len(candidates) > sample_count:
        pick = np.linspace(0, len(candidates) - 1, sample_count).round().astype(np.int64)
        candidates = candidates[pick]

    return candidates


def _solve_log_response(
    z: npt.NDArray[np.uint16], log_dt: FloatArray, lambda_smooth: float
) -> tuple[npt.NDArray[np.int64], FloatArray]:
    """Weighted least squares for `g` on the observed bins.

    Returns the observed DN bins (ascending) and `g` at those bins.
    """
    observed_mask = (z > 0) & (z < DN_MAX)
    bins = np.unique(z[observed_mask]).astype(np.int64)
    if len(bins) < 2:
        raise DegenerateStackError(f"Calibration samples cover only {len(bins)} distinct unsaturated DN value(s)")

    n_bins = len(bins)
    n_pixels = z.shape[0]
    bin_index = np.full(LUT_SIZE, -1, dtype=np.int64)
    bin_index[bins] = np.arange(n_bins)

    pix, img = np.nonzero(observed_mask)
    zs = z[pix, img].astype(np.int64)
    w = hat_weights(zs)

    n_data = len(zs)
    n_smooth = max(0, n_bins - 2)
    a = np.zeros((n_data + 1 + n_smooth, n_bins + n_pixels), dtype=np.float64)
    b = np.zeros(a.shape[0], dtype=np.float64)

    rows = np.arange(n_data)
    a[rows, bin_index[zs]] = w
    a[rows, n_bins + pix] = -w
    b[:n_data] = w * log_dt[img]

    # Fix the scale: g is zero at the observed bin closest to mid-range.
    anchor = int(np.argmin(np.abs(bins - DN_MAX / 2.0)))
    a[n_data, anchor] = 1.0

    if n_smooth > 0:
        za = bins[:-2].astype(np.float64)
        zb = bins[1:-1].astype(np.float64)
        zc = bins[2:].astype(np.float64)
        # Divided second difference, so gaps between observed bins are handled.
        scale = lambda_smooth * np.maximum(hat_weights(zb), 1e-3) * 2.0 / (zc - za)
        rows = n_data + 1 + np.arange(n_smooth)
        k = np.arange(n_smooth)
        a[rows, k] = scale / (zb - za)
        a[rows, k + 1] = -scale * (1.0 / (zb - za) + 1.0 / (zc - zb))
        a[rows, k + 2] = scale / (zc - zb)

    LOG.debug(f"Solving CRF system with {a.shape[0]} equations and {a.shape[1]} unknowns")
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    return bins, x[:n_bins]


def _fill_lut(bins: npt.NDArray[np.int64], values: FloatArray) -> FloatArray:
    """Complete the table from values at observed bins.

    Between observed bins: linear interpolation. Below the first: linear
    towards zero exposure at DN 0. Above the last: a straight line fitted to
    the brightest observed bins.
    """
    dn = np.arange(LUT_SIZE, dtype=np.float64)
    xp = np.concatenate(([0.0], bins.astype(np.float64))) if bins[0] > 0 else bins.astype(np.float64)
    fp = np.concatenate(([0.0], values)) if bins[0] > 0 else values
    lut = np.interp(dn, xp, fp)

    last = int(bins[-1])
    if last < DN_MAX:
        top = bins >= last - _TOP_FIT_SPAN
        if np.count_nonzero(top) < 2:
            top = np.zeros(len(bins), dtype=bool)
            top[-2:] = True
        slope, _ = np.polyfit(bins[top].astype(np.float64), values[top], 1)
        tail = dn > last
        lut[tail] = values[-1] + max(float(slope), 0.0) * (dn[tail] - last)

    return lut


def estimate_inverse_crf(
    stack: CalibrationStack,
    lambda_smooth: float = DEFAULT_LAMBDA_SMOOTH,
    sample_count: int = DEFAULT_SAMPLE_COUNT,
) -> ResponseCurve:
    """Estimate `f^-1` from a calibration stack.

    Raises:
        CalibrationInsufficientError: fewer than three images (raised by CalibrationStack).
        DegenerateStackError: no usable unsaturated samples.
        ValueError: invalid parameters.
    """
    if sample_count < 32:
        raise ValueError(f"sample_count must be at least 32, got {sample_count}")
    if not lambda_smooth > 0.0:
        raise ValueError(f"lambda_smooth must be positive, got {lambda_smooth}")

    z = sample_pixels(stack, sample_count)
    log_dt = np.log(np.asarray(stack.exposures, dtype=np.float64))
    LOG.info(f"Estimating inverse CRF from {z.shape[0]} pixels x {z.shape[1]} exposures")

    bins, g = _solve_log_response(z, log_dt, lambda_smooth)
    lut = _fill_lut(bins, np.exp(g))

    lut = np.asarray(isotonic_regression(lut, increasing=True).x, dtype=np.float64)
    lut = np.maximum(lut, 0.0)
    if not lut[DN_MAX] > 0.0:
        raise DegenerateStackError("Estimated response is identically zero")

    lut = lut / lut[DN_MAX]
    lut = np.minimum(np.maximum.accumulate(lut), 1.0)
    lut[DN_MAX] = 1.0

    LOG.info(f"Estimated inverse CRF over {len(bins)} observed DN bins ({bins[0]}..{bins[-1]})")
    return ResponseCurve(lut)
