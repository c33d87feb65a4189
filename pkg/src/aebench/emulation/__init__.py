from .model import (
    DEFAULT_LADDER_US,
    DEFAULT_SAT_THRESHOLD,
    BracketCycle,
    EmulatedImage,
    SaturationStats,
    saturation_stats,
)
from .emulate import emulate, emulate_from_cycle, emulation_table, select_bracket_higher_no_sat
from .validation import (
    HISTOGRAM_BINS,
    EmulationValidationReport,
    ValidationPoint,
    dn_histogram,
    noise_floor,
    rmse_percent,
    validate_emulation,
)
from .report import histograms_csv, plot_validation, validation_csv, validation_summary, write_validation_report

__all__ = [
    "DEFAULT_LADDER_US",
    "DEFAULT_SAT_THRESHOLD",
    "HISTOGRAM_BINS",
    "BracketCycle",
    "EmulatedImage",
    "EmulationValidationReport",
    "SaturationStats",
    "ValidationPoint",
    "dn_histogram",
    "emulate",
    "emulate_from_cycle",
    "emulation_table",
    "histograms_csv",
    "noise_floor",
    "plot_validation",
    "rmse_percent",
    "saturation_stats",
    "select_bracket_higher_no_sat",
    "validate_emulation",
    "validation_csv",
    "validation_summary",
    "write_validation_report",
]
