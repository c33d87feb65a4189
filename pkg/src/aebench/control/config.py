from dataclasses import dataclass, field


@dataclass
class TargetBrightnessOptions:
    alpha: float = 0.8
    """Damping exponent applied to the brightness ratio."""

    max_ratio: float = 8.0
    """Per-step exposure change is clamped to [1 / max_ratio, max_ratio]."""


@dataclass
class ShimOptions:
    gammas: list[float] = field(default_factory=lambda: [1 / 1.9, 1 / 1.5, 1 / 1.2, 1.0, 1.2, 1.5, 1.9])
    """Gamma transforms `I ** (1 / gamma)` simulated on the latest image; gamma > 1 brightens."""

    delta: float = 0.01
    """Gradient magnitudes below this count as noise."""

    lambda_: float = 1000.0
    """Shaping of the log gradient mapping."""

    kp: float = 0.5
    """Proportional gain of the exposure update."""


@dataclass
class ZhangOptions:
    percentile_knee: float = 0.5
    softness: float = 10.0
    mu: float = 0.6
    """Log-domain smoothing towards the best candidate; 1 jumps straight to it."""

    candidates: int = 7
    span_stops: float = 1.5
    """Candidates cover current * 2 ** [-span_stops, +span_stops]."""


@dataclass
class KimOptions:
    alpha_mix: float = 0.5
    """Weight of the gradient term against the entropy term."""

    window: int = 10
    """Number of most recent observations the GP is trained on."""

    length_scale: float = 0.5
    """Kernel length scale in log2-exposure units."""

    signal_variance: float = 1.0
    noise_variance: float = 1e-2
    grid_points: int = 64
    kappa: float = 2.0
    """Exploration weight of the upper confidence bound on the first decision."""

    kappa_decay: float = 0.8
    """Factor applied to the exploration weight after every decision."""

    kappa_min: float = 0.05
    """Floor of the annealed exploration weight."""


@dataclass
class AEConfig:
    """Exposure limits and the parameters of every controller. Exposures are in microseconds."""

    exposure_min: float = 20.0
    exposure_max: float = 50_000.0
    initial_exposure: float = 8000.0
    """First exposure of the adaptive controllers."""

    sat_threshold: float = 0.01
    """HigherNoSat threshold used when emulating the controller's frames."""

    fixed_target: float = 0.5
    """Brightness the fixed controller calibrates to on the first cycle."""

    fixed_iterations: int = 20
    target_brightness: TargetBrightnessOptions = field(default_factory=TargetBrightnessOptions)
    shim: ShimOptions = field(default_factory=ShimOptions)
    zhang: ZhangOptions = field(default_factory=ZhangOptions)
    kim: KimOptions = field(default_factory=KimOptions)

    def __post_init__(self) -> None:
        if not 0.0 < self.exposure_min < self.exposure_max:
            raise ValueError(
                f"Exposure limits must satisfy 0 < min < max, got [{self.exposure_min}, {self.exposure_max}] us"
            )
        if not 0.0 < self.kim.kappa_decay <= 1.0 or self.kim.kappa_min < 0.0:
            raise ValueError(
                f"Kim kappa decay must lie in (0, 1] and its floor be non-negative, got "
                f"{self.kim.kappa_decay} and {self.kim.kappa_min}"
            )

    def clamp(self, exposure: float) -> float:
        return min(max(exposure, self.exposure_min), self.exposure_max)
