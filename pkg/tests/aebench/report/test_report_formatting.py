import json

from termcolor import colored

from aebench.report import (
    ColoringReportFormatter,
    EmulationCeilingFinding,
    EmulationMedianFinding,
    Finding,
    MissingResultsFinding,
    ReportFormatter,
    Rule,
    RuleMetadata,
    ValidationFindings,
    findings_json,
)


class FakeRule(Rule[None]):
    def metadata(self) -> RuleMetadata:
        return RuleMetadata("Emulation accuracy", description="Emulated images are compared against captures.")

    def validate(self, context: None) -> list[Finding]:
        return []


class OtherRule(FakeRule):
    def metadata(self) -> RuleMetadata:
        return RuleMetadata("Other")


def _findings(*found: Finding) -> ValidationFindings[None]:
    return {FakeRule(): list(found), OtherRule(): []}


def test_plain_format():
    text = ReportFormatter().format(_findings(EmulationCeilingFinding(2.0, 1.78), EmulationMedianFinding(1.2, 1.0)))

    assert " Emulation accuracy\n" in text
    assert "  [ERROR] Maximum emulation RMSE 2.000 % exceeds 1.78 %\n" in text
    assert "  [WARNING] Median emulation RMSE 1.200 % exceeds 1.00 %\n" in text
    assert "  [SUCCESS] No findings\n" in text
    assert "  [FAIL] Emulation accuracy: info: 0, warning: 1, error: 1, fatal: 0\n" in text
    assert "  [PASS] Other:" in text
    assert text.endswith("\nFAIL\n")


def test_plain_format_without_summary():
    text = ReportFormatter().format(_findings(MissingResultsFinding("emulation validation")), summarize=False)
    assert "[INFO] No emulation validation results found" in text
    assert "Summary" not in text
    assert "PASS" not in text


def test_colored_format():
    """Colored output wraps descriptions and marks warnings in the summary."""
    formatter = ColoringReportFormatter(line_length=30)
    text = formatter.format(_findings(EmulationMedianFinding(1.2, 1.0)))

    assert "Emulated images are compared\nagainst captures.\n" in text
    assert colored("WARNING", "yellow") in text
    assert colored("WARN", "yellow") + colored(" ] ", "white") + "Emulation accuracy" in text
    assert text.endswith(colored("PASS", "green") + "\n")


def test_findings_json():
    data = json.loads(findings_json(_findings(EmulationCeilingFinding(2.0, 1.78))))

    assert data["passed"] is False
    assert set(data["rules"].keys()) == {"FakeRule", "OtherRule"}
    (finding,) = data["rules"]["FakeRule"]["findings"]
    assert finding == {
        "finding": "EmulationCeilingFinding",
        "severity": "error",
        "message": "Maximum emulation RMSE 2.000 % exceeds 1.78 %",
    }
    assert data["rules"]["OtherRule"] == {"name": "Other", "findings": []}
