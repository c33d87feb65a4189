"""Seeded procedural radiance canvases.

The canvas is fractal value noise: random values on a lattice, interpolated
with a smoothstep-weighted bilinear blend, summed over octaves of doubling
frequency and decaying amplitude. The field is then pushed towards a dark and a
bright mode and mapped geometrically onto the requested dynamic range.
"""

import logging

import numpy as np

from aebench.photometry import FloatArray, RadianceImage

from .model import SceneSpec

LOG = logging.getLogger(__name__)

# Steepness of the logistic used to separate the dark and bright modes, in
# standard deviations of the noise field.
_MODE_STEEPNESS = 4.0


def _normalize(a: FloatArray) -> FloatArray:
    lo, hi = float(a.min()), float(a.max())
    if hi <= lo:
        return np.zeros_like(a)
    return (a - lo) / (hi - lo)


def value_noise(width: int, height: int, cells: int, rng: np.random.Generator) -> FloatArray:
    """One octave of value noise in [0, 1] with `cells` lattice cells across the width."""
    cells_y = max(1, int(np.ceil(cells * height / width)))
    lattice = rng.random((cells_y + 2, cells + 2))

    u = (np.arange(width) + 0.5) * cells / width
    v = (np.arange(height) + 0.5) * cells / width
    i = np.floor(u).astype(np.int64)
    j = np.floor(v).astype(np.int64)
    fu = u - i
    fv = v - j
    su = fu * fu * (3.0 - 2.0 * fu)
    sv = fv * fv * (3.0 - 2.0 * fv)

    top = lattice[j][:, i] * (1.0 - su) + lattice[j][:, i + 1] * su
    bottom = lattice[j + 1][:, i] * (1.0 - su) + lattice[j + 1][:, i + 1] * su
    return top * (1.0 - sv)[:, None] + bottom * sv[:, None]


def fractal_noise(spec: SceneSpec) -> FloatArray:
    rng = np.random.default_rng(spec.seed)
    field = np.zeros((spec.height, spec.width))
    amplitude = 1.0
    for octave in range(spec.octaves):
        field += amplitude * value_noise(spec.width, spec.height, spec.base_cells * 2**octave, rng)
        amplitude *= spec.persistence
    return _normalize(field)


def shape_bimodal(noise: FloatArray, bimodality: float) -> FloatArray:
    """Blend the field with a logistic of itself, then renormalize to [0, 1]."""
    if bimodality == 0.0:
        return noise
    std = float(noise.std())
    z = (noise - float(np.median(noise))) / std if std > 0.0 else np.zeros_like(noise)
    modes = 1.0 / (1.0 + np.exp(-_MODE_STEEPNESS * z))
    return _normalize((1.0 - bimodality) * noise + bimodality * modes)


def generate_radiance_canvas(spec: SceneSpec) -> RadianceImage:
    """Radiance in [mid / sqrt(DR), mid * sqrt(DR)]; identical for identical specs."""
    shaped = shape_bimodal(fractal_noise(spec), spec.bimodality)
    r_min = spec.mid_radiance / np.sqrt(spec.dynamic_range)
    radiance = r_min * np.power(spec.dynamic_range, shaped)
    LOG.debug(
        f"Canvas {spec.width}x{spec.height} seed {spec.seed}: radiance {radiance.min():.4g} .. {radiance.max():.4g}"
    )
    return RadianceImage(radiance)
