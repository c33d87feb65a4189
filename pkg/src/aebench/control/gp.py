"""One-dimensional Gaussian process regression with a squared-exponential kernel."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from scipy.linalg import cho_factor, cho_solve

from aebench.photometry import FloatArray

_JITTER = 1e-10
"""Diagonal regularization, relative to the signal variance, that keeps noise-free fits factorizable."""


@dataclass
class GaussianProcess:
    """Zero prior mean, `k(a, b) = s2 * exp(-(a - b)^2 / (2 l^2))`, Gaussian observation noise."""

    length_scale: float = 0.5
    signal_variance: float = 1.0
    noise_variance: float = 1e-2

    _x: Optional[FloatArray] = field(default=None, init=False, repr=False)
    _factor: Optional[tuple[FloatArray, bool]] = field(default=None, init=False, repr=False)
    _alpha: Optional[FloatArray] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.length_scale > 0.0 or not self.signal_variance > 0.0 or self.noise_variance < 0.0:
            raise ValueError("GP length scale and signal variance must be positive, noise variance non-negative")

    def kernel(self, a: FloatArray, b: FloatArray) -> FloatArray:
        d = np.subtract.outer(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
        return self.signal_variance * np.exp(-0.5 * (d / self.length_scale) ** 2)

    def fit(self, x: FloatArray, y: FloatArray) -> "GaussianProcess":
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if len(x) == 0 or len(x) != len(y):
            raise ValueError(f"GP needs matching, non-empty inputs, got {len(x)} and {len(y)}")
        k = self.kernel(x, x) + (self.noise_variance + _JITTER * self.signal_variance) * np.eye(len(x))
        self._factor = cho_factor(k, lower=True)
        self._alpha = cho_solve(self._factor, y)
        self._x = x
        return self

    def predict(self, xq: FloatArray) -> tuple[FloatArray, FloatArray]:
        """Posterior mean and standard deviation of the latent function at `xq`."""
        xq = np.asarray(xq, dtype=np.float64).reshape(-1)
        if self._x is None or self._factor is None or self._alpha is None:
            return np.zeros(len(xq)), np.full(len(xq), np.sqrt(self.signal_variance))
        ks = self.kernel(xq, self._x)
        mean = ks @ self._alpha
        v = cho_solve(self._factor, ks.T)
        var = self.signal_variance - np.sum(ks * v.T, axis=1)
        return mean, np.sqrt(np.maximum(var, 0.0))
