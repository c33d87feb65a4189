import json

from typing import Any

import pytest

from aebench.report import (
    BenchmarkValidator,
    BenchResults,
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
    ReportLimits,
    RPESanityRule,
    SaturationOrderingFinding,
    SelectorQualityFinding,
    Severity,
    SuccessCurveRule,
    SuccessOrderingFinding,
    SuccessRateRangeFinding,
    load_results,
    passed,
)


def _controller(saturation: float, rates: list[float]) -> dict[str, Any]:
    return {
        "mean_saturation": saturation,
        "success_curve": {"tau": [0, 50, 100, 150], "success_rate": rates},
    }


def _run(low: float, high: float, distinct: int) -> dict[str, Any]:
    return {"exposure_min_us": low, "exposure_max_us": high, "distinct_exposures": distinct, "sequences": 1}


def _segment(length: float, translation: float, pairs: int) -> dict[str, Any]:
    return {
        "length_m": length,
        "median_translation_pct": translation,
        "median_rotation_deg_per_m": 0.4,
        "pair_count": pairs,
    }


def _good_results() -> BenchResults:
    return BenchResults(
        emulation={"max_pct": 1.2, "median_pct": 0.4, "selector_top2_fraction": 1.0},
        runs={
            "exposure_range_us": [50.0, 30000.0],
            "controllers": {
                "fixed": _run(8000.0, 8000.0, 1),
                "shim": _run(50.0, 30000.0, 9),
            },
        },
        features={
            "controllers": {
                "brightness-70": _controller(0.02, [1.0, 0.9, 0.7, 0.2]),
                "shim": _controller(0.01, [1.0, 0.95, 0.8, 0.3]),
                "fixed": _controller(0.03, [1.0, 0.9, 0.6, 0.1]),
                "kim": _controller(0.02, [1.0, 0.8, 0.5, 0.1]),
            }
        },
        vo={
            "controllers": {
                "shim": {
                    "failure_rate": 0.0,
                    "segments": [_segment(0.5, 3.1, 7)],
                    "omitted_lengths": [],
                }
            }
        },
    )


def test_good_results_pass():
    findings = BenchmarkValidator(_good_results()).validate()
    assert all(len(f) == 0 for f in findings.values())
    assert passed(findings)


def test_missing_results_are_informational():
    """An empty results set produces only INFO findings and still passes."""
    findings = BenchmarkValidator(BenchResults()).validate()
    flat = [f for fs in findings.values() for f in fs]
    assert len(flat) == 5
    assert all(isinstance(f, MissingResultsFinding) and f.severity == Severity.INFO for f in flat)
    assert passed(findings)


def test_emulation_limits():
    results = _good_results()
    results.emulation = {"max_pct": 2.5, "median_pct": 1.5, "selector_top2_fraction": 0.5}
    findings = EmulationAccuracyRule().validate(results)
    assert [type(f) for f in findings] == [EmulationCeilingFinding, EmulationMedianFinding, SelectorQualityFinding]
    assert [f.severity for f in findings] == [Severity.ERROR, Severity.WARNING, Severity.WARNING]
    assert "2.500 %" in findings[0].message()

    results.limits = ReportLimits(emulation_max_pct=3.0, emulation_median_pct=2.0, selector_top2_fraction=0.4)
    assert EmulationAccuracyRule().validate(results) == []

    results.emulation = {"max_pct": "high"}
    (finding,) = EmulationAccuracyRule().validate(results)
    assert isinstance(finding, MalformedResultsFinding)


def test_exposure_clamp():
    results = _good_results()
    assert results.runs is not None
    results.runs["controllers"]["shim"]["exposure_max_us"] = 40000.0
    results.runs["controllers"]["fixed"]["distinct_exposures"] = 3
    findings = ExposureClampRule().validate(results)
    assert [type(f) for f in findings] == [FixedExposureChangedFinding, ExposureOutOfRangeFinding]
    assert "40000" in findings[1].message()

    results.runs = {"controllers": {}}
    assert isinstance(ExposureClampRule().validate(results)[0], MalformedResultsFinding)


def test_success_curves():
    results = _good_results()
    assert results.features is not None
    results.features["controllers"]["kim"] = _controller(0.0, [1.0, 0.5, 0.6, 1.2])
    results.features["controllers"]["zhang"] = {"success_curve": {"tau": [0, 50], "success_rate": [1.0]}}
    findings = SuccessCurveRule().validate(results)

    assert [type(f) for f in findings] == [
        SuccessRateRangeFinding,
        NonMonotoneSuccessFinding,
        NonMonotoneSuccessFinding,
        MalformedResultsFinding,
    ]
    taus = [f.tau for f in findings if isinstance(f, NonMonotoneSuccessFinding)]
    assert taus == [100, 150]


def test_rpe_sanity():
    results = _good_results()
    results.vo = {
        "controllers": {
            "kim": {
                "failure_rate": 0.75,
                "segments": [_segment(0.5, -1.0, 0)],
                "omitted_lengths": [2.0],
            },
            "zhang": {"failure_rate": 1.5},
        }
    }
    findings = RPESanityRule().validate(results)
    assert [type(f) for f in findings] == [
        HighFailureRateFinding,
        NegativeErrorFinding,
        EmptySegmentFinding,
        OmittedSegmentFinding,
        MalformedResultsFinding,
    ]
    assert findings[0].severity == Severity.WARNING
    assert findings[3].severity == Severity.INFO


def test_controller_ordering():
    results = _good_results()
    assert results.features is not None
    results.features["controllers"]["shim"]["mean_saturation"] = 0.1
    results.features["controllers"]["kim"] = _controller(0.0, [1.0, 0.9, 0.9, 0.2])
    findings = ControllerOrderingRule().validate(results)

    assert [type(f) for f in findings] == [SaturationOrderingFinding, SuccessOrderingFinding]
    assert all(f.severity == Severity.WARNING for f in findings)
    ordering = findings[1]
    assert isinstance(ordering, SuccessOrderingFinding)
    assert (ordering.tau, ordering.fixed, ordering.kim) == (100, 0.6, 0.9)

    results.limits = ReportLimits(ordering_tau=75)
    assert len(ControllerOrderingRule().validate(results)) == 1


def test_load_results(tmp_path):
    """Results are found directly in the directory or one level down."""
    (tmp_path / "summary.json").write_text(json.dumps({"max_pct": 1.0}))
    (tmp_path / "features").mkdir()
    (tmp_path / "features" / "features.json").write_text(json.dumps({"controllers": {}}))

    results = load_results(tmp_path)
    assert results.emulation == {"max_pct": 1.0}
    assert results.features == {"controllers": {}}
    assert results.runs is None and results.vo is None
    assert results.sources["features"].endswith("features.json")

    (tmp_path / "rpe.json").write_text("[1, 2]")
    with pytest.raises(ValueError, match="JSON object"):
        load_results(tmp_path)
    (tmp_path / "rpe.json").write_text("{")
    with pytest.raises(ValueError, match="Malformed"):
        load_results(tmp_path)
    with pytest.raises(FileNotFoundError):
        load_results(tmp_path / "absent")
