"""The benchmark outputs a report is run over."""

import json
import logging

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from aebench.util import Pathlike

LOG = logging.getLogger(__name__)

EMULATION_FILE = "summary.json"
RUNS_FILE = "runs.json"
FEATURES_FILE = "features.json"
VO_FILE = "rpe.json"


@dataclass
class ReportLimits:
    emulation_max_pct: float = 1.78
    """Largest acceptable noise-subtracted HigherNoSat RMSE, percent of full range."""

    emulation_median_pct: float = 1.0
    selector_top2_fraction: float = 0.95
    """Fraction of sweep points where HigherNoSat must pick one of the two best brackets."""

    vo_failure_rate: float = 0.5
    ordering_tau: int = 100
    """Match threshold at which the fixed controller is expected to succeed at least as often as Kim."""


@dataclass
class BenchResults:
    """Parsed JSON outputs of the benchmark commands; absent outputs are None."""

    emulation: Optional[dict[str, Any]] = None
    runs: Optional[dict[str, Any]] = None
    features: Optional[dict[str, Any]] = None
    vo: Optional[dict[str, Any]] = None
    limits: ReportLimits = field(default_factory=ReportLimits)
    sources: dict[str, str] = field(default_factory=dict[str, str])


def _find(directory: Path, name: str) -> Optional[Path]:
    if (directory / name).is_file():
        return directory / name
    for path in sorted(directory.glob(f"*/{name}")):
        return path
    return None


def _read(path: Path) -> dict[str, Any]:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"Malformed results file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValueError(f"Malformed results file {path}: expected a JSON object")
    return data  # type: ignore[return-value]


def load_results(directory: Pathlike, limits: Optional[ReportLimits] = None) -> BenchResults:
    """Collect results from `directory` or its immediate subdirectories."""
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"Results directory {root} does not exist")

    results = BenchResults(limits=limits if limits is not None else ReportLimits())
    wanted = (("emulation", EMULATION_FILE), ("runs", RUNS_FILE), ("features", FEATURES_FILE), ("vo", VO_FILE))
    for attr, name in wanted:
        path = _find(root, name)
        if path is None:
            LOG.info(f"No {name} under {root}")
            continue
        setattr(results, attr, _read(path))
        results.sources[attr] = str(path)

    return results
