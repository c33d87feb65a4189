"""Checks over benchmark results."""

from dataclasses import dataclass
from typing import Any

from .framework import Finding, Rule, RuleMetadata, Severity
from .results import BenchResults


@dataclass
class MissingResultsFinding(Finding):
    what: str

    def message(self) -> str:
        return f"No {self.what} results found"

    def _default_severity(self) -> Severity:
        return Severity.INFO


@dataclass
class MalformedResultsFinding(Finding):
    what: str
    detail: str

    def message(self) -> str:
        return f"Malformed {self.what} results: {self.detail}"


@dataclass
class EmulationCeilingFinding(Finding):
    max_pct: float
    ceiling_pct: float

    def message(self) -> str:
        return f"Maximum emulation RMSE {self.max_pct:.3f} % exceeds {self.ceiling_pct:.2f} %"


@dataclass
class EmulationMedianFinding(Finding):
    median_pct: float
    limit_pct: float

    def message(self) -> str:
        return f"Median emulation RMSE {self.median_pct:.3f} % exceeds {self.limit_pct:.2f} %"

    def _default_severity(self) -> Severity:
        return Severity.WARNING


@dataclass
class SelectorQualityFinding(Finding):
    fraction: float
    limit: float

    def message(self) -> str:
        return (
            f"HigherNoSat picked one of the two best brackets for {self.fraction * 100:.1f} % of exposures, "
            f"expected at least {self.limit * 100:.0f} %"
        )

    def _default_severity(self) -> Severity:
        return Severity.WARNING


_EMULATION_DESCRIPTION = """Emulated images are compared against images
captured at the same exposure. The noise-subtracted RMSE must stay below the
ceiling at every exposure, and the bracket selector should pick one of the two
best brackets almost everywhere."""


def _number(data: dict[str, Any], key: str) -> float:
    value = data.get(key)
    if not isinstance(value, (int, float)):
        raise KeyError(key)
    return float(value)


class EmulationAccuracyRule(Rule[BenchResults]):
    def metadata(self):
        return RuleMetadata("Emulation accuracy", description=_EMULATION_DESCRIPTION)

    def validate(self, context: BenchResults) -> list[Finding]:
        if context.emulation is None:
            return [MissingResultsFinding("emulation validation")]

        limits = context.limits
        findings: list[Finding] = []
        try:
            max_pct = _number(context.emulation, "max_pct")
            median_pct = _number(context.emulation, "median_pct")
            top2 = _number(context.emulation, "selector_top2_fraction")
        except KeyError as e:
            return [MalformedResultsFinding("emulation validation", f"missing {e}")]

        if max_pct > limits.emulation_max_pct:
            findings.append(EmulationCeilingFinding(max_pct, limits.emulation_max_pct))
        if median_pct > limits.emulation_median_pct:
            findings.append(EmulationMedianFinding(median_pct, limits.emulation_median_pct))
        if top2 < limits.selector_top2_fraction:
            findings.append(SelectorQualityFinding(top2, limits.selector_top2_fraction))
        return findings


@dataclass
class ExposureOutOfRangeFinding(Finding):
    controller: str
    low: float
    high: float
    exposure_range: tuple[float, float]

    def message(self) -> str:
        return (
            f"{self.controller} used exposures {self.low:g} .. {self.high:g} us outside "
            f"[{self.exposure_range[0]:g}, {self.exposure_range[1]:g}] us"
        )


@dataclass
class FixedExposureChangedFinding(Finding):
    distinct: int
    sequences: int

    def message(self) -> str:
        return f"The fixed controller used {self.distinct} exposures over {self.sequences} sequences"


class ExposureClampRule(Rule[BenchResults]):
    def metadata(self):
        return RuleMetadata(
            "Exposures inside the configured range",
            description="Every exposure a controller requests must lie inside the configured limits.",
        )

    def validate(self, context: BenchResults) -> list[Finding]:
        if context.runs is None:
            return [MissingResultsFinding("controller run")]

        try:
            lo, hi = (float(v) for v in context.runs["exposure_range_us"])
            controllers: dict[str, Any] = context.runs["controllers"]
        except (KeyError, TypeError, ValueError) as e:
            return [MalformedResultsFinding("controller run", str(e))]

        findings: list[Finding] = []
        for name, run in controllers.items():
            if run["exposure_min_us"] < lo or run["exposure_max_us"] > hi:
                low, high = run["exposure_min_us"], run["exposure_max_us"]
                findings.append(ExposureOutOfRangeFinding(name, low, high, (lo, hi)))
            if name == "fixed" and run["distinct_exposures"] > run["sequences"]:
                findings.append(FixedExposureChangedFinding(run["distinct_exposures"], run["sequences"]))
        return findings


@dataclass
class NonMonotoneSuccessFinding(Finding):
    controller: str
    tau: int

    def message(self) -> str:
        return f"Success curve of {self.controller} increases at tau = {self.tau}"


@dataclass
class SuccessRateRangeFinding(Finding):
    controller: str
    rate: float

    def message(self) -> str:
        return f"Success rate {self.rate} of {self.controller} is outside [0, 1]"


class SuccessCurveRule(Rule[BenchResults]):
    def metadata(self):
        return RuleMetadata(
            "Success curves",
            description="The fraction of successful trajectories can only drop as the match threshold grows.",
        )

    def validate(self, context: BenchResults) -> list[Finding]:
        if context.features is None:
            return [MissingResultsFinding("feature benchmark")]

        findings: list[Finding] = []
        for name, summary in context.features.get("controllers", {}).items():
            curve = summary.get("success_curve", {})
            taus, rates = curve.get("tau", []), curve.get("success_rate", [])
            if len(taus) != len(rates):
                detail = f"{name}: {len(taus)} taus, {len(rates)} rates"
                findings.append(MalformedResultsFinding("feature benchmark", detail))
                continue
            for rate in rates:
                if not 0.0 <= rate <= 1.0:
                    findings.append(SuccessRateRangeFinding(name, rate))
            for k in range(1, len(rates)):
                if rates[k] > rates[k - 1]:
                    findings.append(NonMonotoneSuccessFinding(name, taus[k]))
        return findings


@dataclass
class NegativeErrorFinding(Finding):
    controller: str
    length_m: float

    def message(self) -> str:
        return f"Negative relative pose error for {self.controller} over {self.length_m:g} m"


@dataclass
class EmptySegmentFinding(Finding):
    controller: str
    length_m: float

    def message(self) -> str:
        return f"Segment length {self.length_m:g} m of {self.controller} is reported without pose pairs"


@dataclass
class OmittedSegmentFinding(Finding):
    controller: str
    length_m: float

    def message(self) -> str:
        return f"No pose pair of {self.controller} spans {self.length_m:g} m"

    def _default_severity(self) -> Severity:
        return Severity.INFO


@dataclass
class HighFailureRateFinding(Finding):
    controller: str
    rate: float
    limit: float

    def message(self) -> str:
        return f"Visual odometry failed on {self.rate * 100:.0f} % of the {self.controller} trajectories"

    def _default_severity(self) -> Severity:
        return Severity.WARNING


class RPESanityRule(Rule[BenchResults]):
    def metadata(self):
        return RuleMetadata(
            "Relative pose error sanity",
            description="Errors are non-negative and every reported segment length is backed by pose pairs.",
        )

    def validate(self, context: BenchResults) -> list[Finding]:
        if context.vo is None:
            return [MissingResultsFinding("visual odometry")]

        findings: list[Finding] = []
        for name, summary in context.vo.get("controllers", {}).items():
            rate = float(summary.get("failure_rate", 0.0))
            if not 0.0 <= rate <= 1.0:
                findings.append(MalformedResultsFinding("visual odometry", f"{name}: failure rate {rate}"))
            elif rate > context.limits.vo_failure_rate:
                findings.append(HighFailureRateFinding(name, rate, context.limits.vo_failure_rate))

            for seg in summary.get("segments", []):
                if seg["median_translation_pct"] < 0.0 or seg["median_rotation_deg_per_m"] < 0.0:
                    findings.append(NegativeErrorFinding(name, seg["length_m"]))
                if seg["pair_count"] < 1:
                    findings.append(EmptySegmentFinding(name, seg["length_m"]))
            for length in summary.get("omitted_lengths", []):
                findings.append(OmittedSegmentFinding(name, length))
        return findings


@dataclass
class SaturationOrderingFinding(Finding):
    controller: str
    saturation: float
    baseline: float

    def message(self) -> str:
        return (
            f"{self.controller} saturates {self.saturation * 100:.2f} % of pixels, more than "
            f"brightness-70 ({self.baseline * 100:.2f} %)"
        )

    def _default_severity(self) -> Severity:
        return Severity.WARNING


@dataclass
class SuccessOrderingFinding(Finding):
    tau: int
    fixed: float
    kim: float

    def message(self) -> str:
        return f"At tau = {self.tau} kim succeeds more often ({self.kim:.2f}) than fixed ({self.fixed:.2f})"

    def _default_severity(self) -> Severity:
        return Severity.WARNING


class ControllerOrderingRule(Rule[BenchResults]):
    def metadata(self):
        return RuleMetadata(
            "Relative controller ordering",
            description="Gradient-based controllers should saturate no more than the 70 % brightness baseline, "
            "and the fixed exposure should track at least as reliably as the GP controller.",
        )

    def validate(self, context: BenchResults) -> list[Finding]:
        findings: list[Finding] = []
        if context.features is None:
            return [MissingResultsFinding("feature benchmark")]

        controllers: dict[str, Any] = context.features.get("controllers", {})
        if "brightness-70" in controllers:
            baseline = float(controllers["brightness-70"]["mean_saturation"])
            for name in ("shim", "zhang"):
                if name in controllers and float(controllers[name]["mean_saturation"]) > baseline:
                    saturation = float(controllers[name]["mean_saturation"])
                    findings.append(SaturationOrderingFinding(name, saturation, baseline))

        tau = context.limits.ordering_tau
        if "fixed" in controllers and "kim" in controllers:
            rates = [_rate_at(controllers[n], tau) for n in ("fixed", "kim")]
            if rates[0] is not None and rates[1] is not None and rates[0] < rates[1]:
                findings.append(SuccessOrderingFinding(tau, rates[0], rates[1]))
        return findings


def _rate_at(summary: dict[str, Any], tau: int) -> float | None:
    curve = summary.get("success_curve", {})
    for t, r in zip(curve.get("tau", []), curve.get("success_rate", [])):
        if t == tau:
            return float(r)
    return None
