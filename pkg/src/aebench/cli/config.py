"""Run configuration: everything a command needs to reproduce its output.

Values come from the dataclass defaults, then an optional TOML (or a saved
`run_config.json`) file, then command line flags. Unknown keys are rejected.
Every command writes the configuration it ran with as `run_config.json` next
to its output; feeding that file back through `--config` repeats the run.

Example TOML:

    seed = 7
    controllers = ["fixed", "shim"]

    [synthetic]
    cycles = 50

    [synthetic.capture]
    drift_px = 0.0

    [ae]
    exposure_max = 30000.0

    [ae.kim]
    kappa = 1.0

    [report.severity]
    SelectorQualityFinding = "error"
"""

import json
import tomllib

from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Optional

import dacite

from semver import Version

from aebench import __version__
from aebench.control import ALL_CONTROLLERS, AEConfig, ControllerKind
from aebench.features import TAU_MARKER, DetectorOptions, MatcherOptions
from aebench.report import ReportLimits, validate_severities
from aebench.synth import CaptureSpec, SceneSpec
from aebench.trajectory import RansacOptions, RPEOptions
from aebench.util import Pathlike

CONFIG_FILE = "run_config.json"


class ConfigError(ValueError):
    """A configuration file or value is invalid."""


class UsageError(ValueError):
    """The command line is inconsistent."""


class OutputFormat:
    CSV = "csv"
    JSON = "json"
    SVG = "svg"

    ALL = (CSV, JSON, SVG)


@dataclass
class SyntheticConfig:
    cycles: int = 100
    sequences: int = 10
    """Sequences rendered for a synthetic benchmark suite; sequence k is seeded with `seed + k`."""

    static: bool = False
    """Render a motion-free sequence, e.g. as a calibration stack."""

    scene: SceneSpec = field(default_factory=SceneSpec)
    capture: CaptureSpec = field(default_factory=CaptureSpec)


@dataclass
class CalibrationConfig:
    lambda_smooth: float = 50.0
    sample_count: int = 256
    cycle: int = 0
    """Bracket cycle of the sequence used as the calibration stack."""


def _validation_scene() -> SceneSpec:
    return SceneSpec(width=320, height=240, dynamic_range=256.0, mid_radiance=40.0)


def _validation_capture() -> CaptureSpec:
    return CaptureSpec(read_noise_dn=1.0, path_step_px=0.0, drift_px=0.0)


@dataclass
class EmulationValidationConfig:
    exposures: int = 200
    """Ground-truth exposures, log-spaced over [exposure_min_us, exposure_max_us]."""

    exposure_min_us: float = 20.0
    exposure_max_us: float = 50_000.0
    repeats: int = 25
    """Captures per exposure used to measure the noise floor; below 2 disables the subtraction."""

    sat_threshold: float = 0.01
    crf: Optional[str] = None
    """Response used by the emulator: a CRF CSV or `linear`, `gamma:<g>`, `s-curve:<a>`. Defaults to the
    ground-truth response of the capture."""

    scene: SceneSpec = field(default_factory=_validation_scene)
    capture: CaptureSpec = field(default_factory=_validation_capture)


@dataclass
class BenchConfig:
    tau_marker: int = TAU_MARKER
    focal_px: Optional[float] = None
    """Focal length used by visual odometry; defaults to the frame width."""

    planar_inlier_ratio: float = 0.9
    detector: DetectorOptions = field(default_factory=DetectorOptions)
    matcher: MatcherOptions = field(default_factory=MatcherOptions)
    ransac: RansacOptions = field(default_factory=RansacOptions)
    rpe: RPEOptions = field(default_factory=RPEOptions)


@dataclass
class ReportConfig:
    limits: ReportLimits = field(default_factory=ReportLimits)
    severity: dict[str, str] = field(default_factory=dict[str, str])
    """Finding class name to `info`, `warning`, `error` or `fatal`."""


@dataclass
class RunConfig:
    version: str = __version__
    """Version of aebench that wrote the configuration; only the major version must match."""

    seed: int = 0
    """Seeds scene and capture generation."""

    out: str = "out"
    formats: list[str] = field(default_factory=lambda: [OutputFormat.CSV, OutputFormat.JSON])
    controllers: list[str] = field(default_factory=lambda: [str(k) for k in ALL_CONTROLLERS])
    synthetic: SyntheticConfig = field(default_factory=SyntheticConfig)
    calibration: CalibrationConfig = field(default_factory=CalibrationConfig)
    validation: EmulationValidationConfig = field(default_factory=EmulationValidationConfig)
    ae: AEConfig = field(default_factory=AEConfig)
    bench: BenchConfig = field(default_factory=BenchConfig)
    report: ReportConfig = field(default_factory=ReportConfig)

    def __post_init__(self) -> None:
        for f in self.formats:
            if f not in OutputFormat.ALL:
                raise ValueError(f"Unknown output format {f}, expected one of {', '.join(OutputFormat.ALL)}")
        for c in self.controllers:
            ControllerKind(c)
        if self.synthetic.cycles < 1:
            raise ValueError(f"Cycle count must be positive, got {self.synthetic.cycles}")
        if self.synthetic.sequences < 1:
            raise ValueError(f"Sequence count must be positive, got {self.synthetic.sequences}")
        validate_severities(self.report.severity)

    def wants(self, fmt: str) -> bool:
        return fmt in self.formats

    def seeded(self, offset: int = 0) -> tuple[SceneSpec, CaptureSpec]:
        """Scene and capture of the synthetic section seeded for sequence `offset`."""
        s = self.synthetic
        capture = s.capture
        if s.static:
            capture = replace(capture, path_step_px=0.0, drift_px=0.0)
        return replace(s.scene, seed=self.seed + offset), replace(capture, seed=self.seed + offset)


def check_version(version: str) -> None:
    try:
        theirs = Version.parse(version)
    except ValueError as e:
        raise ConfigError(f"Invalid configuration version {version!r}: {e}") from e
    ours = Version.parse(__version__)
    if theirs.major != ours.major:
        raise ConfigError(f"Configuration version {version} is incompatible with aebench {__version__}")


# TOML integers are accepted where floats are expected.
_DACITE = dacite.Config(strict=True, cast=[tuple], type_hooks={float: float})


def config_from_dict(data: dict[str, Any]) -> RunConfig:
    check_version(str(data.get("version", __version__)))
    try:
        return dacite.from_dict(RunConfig, data, config=_DACITE)
    except (dacite.DaciteError, ValueError) as e:
        raise ConfigError(f"Invalid configuration: {e}") from e


def load_config(path: Pathlike) -> RunConfig:
    """Read a TOML file, or JSON when the suffix is `.json`."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Configuration file {path} does not exist")
    try:
        if path.suffix == ".json":
            data = json.loads(path.read_text())
        else:
            with open(path, "rb") as f:
                data = tomllib.load(f)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"Malformed configuration file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Configuration file {path} must hold a table")
    return config_from_dict(data)  # type: ignore[arg-type]


def config_to_json(config: RunConfig) -> str:
    return json.dumps(asdict(config), indent=2, sort_keys=True) + "\n"
