"""Image quality metrics driving the adaptive controllers.

Gradients are central differences of the image normalized to [0, 1].
"""

import math

import numpy as np

from aebench.photometry import FloatArray, RawImage

HISTOGRAM_BINS = 256


def mean_brightness(img: RawImage) -> float:
    """Mean DN as a fraction of the 12-bit range."""
    return float(img.normalized().mean())


def gradient_magnitude(f: FloatArray) -> FloatArray:
    gy, gx = np.gradient(f)
    return np.sqrt(gx * gx + gy * gy)


def shaped_gradient_mean(g: FloatArray, delta: float, lambda_: float) -> float:
    """Mean of `log(lambda (g - delta) + 1) / log(lambda + 1)` over gradients `g >= delta`, 0 elsewhere."""
    shaped = np.log1p(lambda_ * np.maximum(g - delta, 0.0))
    return float(shaped.mean() / math.log1p(lambda_))


def shim_gradient_metric(img: RawImage, delta: float = 0.01, lambda_: float = 1000.0) -> float:
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"Gradient threshold must lie in [0, 1), got {delta}")
    if not lambda_ > 0.0:
        raise ValueError(f"Gradient shaping must be positive, got {lambda_}")
    return shaped_gradient_mean(gradient_magnitude(img.normalized()), delta, lambda_)


def percentile_weighted_gradient(g: FloatArray, percentile_knee: float, softness: float) -> float:
    """Sorted gradients weighted by a logistic of their rank."""
    values = np.sort(g.reshape(-1))
    n = len(values)
    rank = (np.arange(n) + 0.5) / n
    weights = 1.0 / (1.0 + np.exp(-softness * (rank - percentile_knee)))
    return float(np.sum(weights * values) / n)


def zhang_metric(img: RawImage, percentile_knee: float = 0.5, softness: float = 10.0) -> float:
    if not 0.0 < percentile_knee < 1.0:
        raise ValueError(f"Percentile knee must lie in (0, 1), got {percentile_knee}")
    return percentile_weighted_gradient(gradient_magnitude(img.normalized()), percentile_knee, softness)


def normalized_entropy(img: RawImage, bins: int = HISTOGRAM_BINS) -> float:
    """Shannon entropy of the DN histogram divided by its maximum, `log(bins)`."""
    counts = np.bincount(img.data.reshape(-1).astype(np.int64) * bins // 4096, minlength=bins)
    p = counts[counts > 0] / img.data.size
    return float(max(-np.sum(p * np.log(p)), 0.0) / math.log(bins))


def kim_metric(img: RawImage, alpha_mix: float = 0.5) -> float:
    """Blend of the shaped gradient (delta 0, lambda 1000) and the normalized entropy."""
    if not 0.0 <= alpha_mix <= 1.0:
        raise ValueError(f"Metric mix must lie in [0, 1], got {alpha_mix}")
    return alpha_mix * shim_gradient_metric(img, 0.0, 1000.0) + (1.0 - alpha_mix) * normalized_entropy(img)
