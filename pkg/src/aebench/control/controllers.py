"""Auto-exposure controllers behind one step contract.

A controller is given the frame captured (emulated) at its last requested
exposure and answers with the next exposure. Every decision is clamped to the
configured exposure range and depends only on the controller state, the frame
and the configuration.
"""

import logging
import math

from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from enum import StrEnum
from typing import Optional

import numpy as np

from aebench.emulation import BracketCycle, emulate, emulate_from_cycle
from aebench.photometry import FloatArray, RawImage, ResponseCurve

from .config import AEConfig
from .gp import GaussianProcess
from .metrics import (
    gradient_magnitude,
    kim_metric,
    mean_brightness,
    shaped_gradient_mean,
    zhang_metric,
)

LOG = logging.getLogger(__name__)

_EPS_BRIGHTNESS = 1.0 / 4095.0


class ControllerKind(StrEnum):
    FIXED = "fixed"
    BRIGHTNESS_30 = "brightness-30"
    BRIGHTNESS_50 = "brightness-50"
    BRIGHTNESS_70 = "brightness-70"
    SHIM = "shim"
    ZHANG = "zhang"
    KIM = "kim"


ALL_CONTROLLERS: list[ControllerKind] = list(ControllerKind)


@dataclass(frozen=True)
class AEDecision:
    next_exposure: float
    """Microseconds, inside the configured range."""

    metric_value: float
    """The controller's quality score of the frame it was given."""


class AEController(ABC):
    """Stateful exposure policy: frame in, next exposure out."""

    kind: ControllerKind

    def __init__(self, config: AEConfig, crf: ResponseCurve):
        self.config = config
        self.crf = crf

    def initial_exposure(self, first_cycle: BracketCycle) -> float:
        """Exposure of the first frame of a sequence."""
        return self.config.clamp(self.config.initial_exposure)

    @abstractmethod
    def step(self, img: RawImage, cycle: Optional[BracketCycle] = None) -> AEDecision:
        """Decide the next exposure from `img`, captured at `img.exposure`."""
        raise NotImplementedError()

    def reset(self) -> None:
        """Forget everything learned from previous frames."""


def _closest_best(scores: list[float], distances: list[float]) -> int:
    """Index of the highest score; ties go to the smallest distance, then the lowest index."""
    best = max(scores)
    return min((i for i, s in enumerate(scores) if s == best), key=lambda i: (distances[i], i))


class FixedController(AEController):
    """Calibrates once on the first cycle to a brightness target and never changes."""

    kind = ControllerKind.FIXED

    def __init__(self, config: AEConfig, crf: ResponseCurve):
        super().__init__(config, crf)
        self.exposure: Optional[float] = None

    def calibrate(self, cycle: BracketCycle) -> float:
        """Bisection over log exposure of `mean_brightness(emulate(t)) = target`."""
        cfg = self.config

        def brightness(t: float) -> float:
            return mean_brightness(emulate_from_cycle(cycle, t, self.crf, cfg.sat_threshold).image)

        lo, hi = math.log(cfg.exposure_min), math.log(cfg.exposure_max)
        if brightness(cfg.exposure_max) < cfg.fixed_target:
            return cfg.exposure_max
        if brightness(cfg.exposure_min) > cfg.fixed_target:
            return cfg.exposure_min

        for _ in range(cfg.fixed_iterations):
            mid = 0.5 * (lo + hi)
            if brightness(math.exp(mid)) < cfg.fixed_target:
                lo = mid
            else:
                hi = mid
        return cfg.clamp(math.exp(0.5 * (lo + hi)))

    def initial_exposure(self, first_cycle: BracketCycle) -> float:
        if self.exposure is None:
            self.exposure = self.calibrate(first_cycle)
            LOG.info(f"Fixed exposure calibrated to {self.exposure:.1f} us")
        return self.exposure

    def step(self, img: RawImage, cycle: Optional[BracketCycle] = None) -> AEDecision:
        if self.exposure is None:
            if cycle is None:
                raise ValueError("The fixed controller must be calibrated on a bracket cycle first")
            self.initial_exposure(cycle)
        assert self.exposure is not None
        return AEDecision(self.exposure, mean_brightness(img))

    def reset(self) -> None:
        self.exposure = None


class TargetBrightnessController(AEController):
    """Multiplicative update towards a mean brightness target."""

    def __init__(self, config: AEConfig, crf: ResponseCurve, target: float):
        super().__init__(config, crf)
        if not 0.0 < target < 1.0:
            raise ValueError(f"Brightness target must lie in (0, 1), got {target}")
        self.target = target
        self.kind = {
            0.3: ControllerKind.BRIGHTNESS_30,
            0.5: ControllerKind.BRIGHTNESS_50,
            0.7: ControllerKind.BRIGHTNESS_70,
        }.get(target, ControllerKind.BRIGHTNESS_50)

    def step(self, img: RawImage, cycle: Optional[BracketCycle] = None) -> AEDecision:
        opts = self.config.target_brightness
        mean = mean_brightness(img)
        ratio = (self.target / max(mean, _EPS_BRIGHTNESS)) ** opts.alpha
        ratio = min(max(ratio, 1.0 / opts.max_ratio), opts.max_ratio)
        return AEDecision(self.config.clamp(img.exposure * ratio), mean)


class ShimController(AEController):
    """Simulates gamma-adjusted versions of the frame and steers towards the best gamma."""

    kind = ControllerKind.SHIM

    def score_gammas(self, img: RawImage) -> list[float]:
        opts = self.config.shim
        f = img.normalized()
        return [
            shaped_gradient_mean(gradient_magnitude(f ** (1.0 / g)), opts.delta, opts.lambda_) for g in opts.gammas
        ]

    def step(self, img: RawImage, cycle: Optional[BracketCycle] = None) -> AEDecision:
        opts = self.config.shim
        scores = self.score_gammas(img)
        gamma = opts.gammas[_closest_best(scores, [abs(math.log(g)) for g in opts.gammas])]
        factor = max(1.0 + opts.kp * (gamma - 1.0), 1.0 / 8.0)
        metric = shaped_gradient_mean(gradient_magnitude(img.normalized()), opts.delta, opts.lambda_)
        return AEDecision(self.config.clamp(img.exposure * factor), metric)


class ZhangController(AEController):
    """Re-exposes the frame at candidate exposures through the response curve and moves towards the best one."""

    kind = ControllerKind.ZHANG

    def candidates(self, current: float) -> list[float]:
        opts = self.config.zhang
        return [current * 2.0**s for s in np.linspace(-opts.span_stops, opts.span_stops, opts.candidates).tolist()]

    def step(self, img: RawImage, cycle: Optional[BracketCycle] = None) -> AEDecision:
        opts = self.config.zhang
        current = img.exposure
        candidates = self.candidates(current)
        scores = [
            zhang_metric(emulate(img, t, self.crf), opts.percentile_knee, opts.softness) for t in candidates
        ]
        best = _closest_best(scores, [abs(math.log(t / current)) for t in candidates])
        target = candidates[best]
        next_exposure = math.exp((1.0 - opts.mu) * math.log(current) + opts.mu * math.log(target))
        return AEDecision(self.config.clamp(next_exposure), zhang_metric(img, opts.percentile_knee, opts.softness))


class KimController(AEController):
    """Bayesian optimization of the gradient/entropy metric over log exposure.

    A GP is fitted to the most recent (log2 exposure, metric) observations and
    the next exposure maximizes the upper confidence bound on a fixed grid. The
    exploration weight shrinks geometrically with every decision, so the loop
    explores the range first and then settles on the best exposure seen.
    """

    kind = ControllerKind.KIM

    def __init__(self, config: AEConfig, crf: ResponseCurve):
        super().__init__(config, crf)
        opts = config.kim
        self.window: deque[tuple[float, float]] = deque(maxlen=opts.window)
        self.gp = GaussianProcess(opts.length_scale, opts.signal_variance, opts.noise_variance)
        self.grid = np.linspace(math.log2(config.exposure_min), math.log2(config.exposure_max), opts.grid_points)
        self.steps = 0

    def exploration_weight(self) -> float:
        opts = self.config.kim
        return max(opts.kappa * opts.kappa_decay**self.steps, opts.kappa_min)

    def acquisition(self) -> FloatArray:
        x = np.asarray([p[0] for p in self.window])
        y = np.asarray([p[1] for p in self.window])
        mean, std = self.gp.fit(x, y).predict(self.grid)
        return mean + self.exploration_weight() * std

    def step(self, img: RawImage, cycle: Optional[BracketCycle] = None) -> AEDecision:
        metric = kim_metric(img, self.config.kim.alpha_mix)
        current = math.log2(img.exposure)
        self.window.append((current, metric))

        ucb = self.acquisition().tolist()
        self.steps += 1
        best = _closest_best(ucb, [abs(g - current) for g in self.grid.tolist()])
        return AEDecision(self.config.clamp(2.0 ** float(self.grid[best])), metric)

    def reset(self) -> None:
        self.window.clear()
        self.steps = 0


def make_controller(kind: ControllerKind | str, config: AEConfig, crf: ResponseCurve) -> AEController:
    kind = ControllerKind(kind)
    match kind:
        case ControllerKind.FIXED:
            return FixedController(config, crf)
        case ControllerKind.BRIGHTNESS_30:
            return TargetBrightnessController(config, crf, 0.3)
        case ControllerKind.BRIGHTNESS_50:
            return TargetBrightnessController(config, crf, 0.5)
        case ControllerKind.BRIGHTNESS_70:
            return TargetBrightnessController(config, crf, 0.7)
        case ControllerKind.SHIM:
            return ShimController(config, crf)
        case ControllerKind.ZHANG:
            return ZhangController(config, crf)
        case ControllerKind.KIM:
            return KimController(config, crf)
