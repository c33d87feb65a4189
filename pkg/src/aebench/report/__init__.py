from .framework import (
    FatalFindingError,
    Finding,
    Rule,
    RuleMetadata,
    Severity,
    ValidationFindings,
    Validator,
    validate_severities,
)
from .summarize import count_severity, passed, summarize_findings
from .formatting import ColoringReportFormatter, ReportFormatter, findings_json
from .results import (
    EMULATION_FILE,
    FEATURES_FILE,
    RUNS_FILE,
    VO_FILE,
    BenchResults,
    ReportLimits,
    load_results,
)
from .rules import (
    ControllerOrderingRule,
    EmptySegmentFinding,
    EmulationAccuracyRule,
    EmulationCeilingFinding,
    EmulationMedianFinding,
    ExposureClampRule,
    ExposureOutOfRangeFinding,
    FixedExposureChangedFinding,
    HighFailureRateFinding,
    MalformedResultsFinding,
    MissingResultsFinding,
    NegativeErrorFinding,
    NonMonotoneSuccessFinding,
    OmittedSegmentFinding,
    RPESanityRule,
    SaturationOrderingFinding,
    SelectorQualityFinding,
    SuccessCurveRule,
    SuccessOrderingFinding,
    SuccessRateRangeFinding,
)
from .validator import BenchmarkValidator

__all__ = [
    "EMULATION_FILE",
    "FEATURES_FILE",
    "RUNS_FILE",
    "VO_FILE",
    "BenchResults",
    "BenchmarkValidator",
    "ColoringReportFormatter",
    "ControllerOrderingRule",
    "EmptySegmentFinding",
    "EmulationAccuracyRule",
    "EmulationCeilingFinding",
    "EmulationMedianFinding",
    "ExposureClampRule",
    "ExposureOutOfRangeFinding",
    "FatalFindingError",
    "Finding",
    "FixedExposureChangedFinding",
    "HighFailureRateFinding",
    "MalformedResultsFinding",
    "MissingResultsFinding",
    "NegativeErrorFinding",
    "NonMonotoneSuccessFinding",
    "OmittedSegmentFinding",
    "RPESanityRule",
    "ReportFormatter",
    "ReportLimits",
    "Rule",
    "RuleMetadata",
    "SaturationOrderingFinding",
    "SelectorQualityFinding",
    "Severity",
    "SuccessCurveRule",
    "SuccessOrderingFinding",
    "SuccessRateRangeFinding",
    "ValidationFindings",
    "Validator",
    "count_severity",
    "findings_json",
    "load_results",
    "passed",
    "summarize_findings",
    "validate_severities",
]
