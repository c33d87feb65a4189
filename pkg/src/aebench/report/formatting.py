import json

from dataclasses import dataclass
from textwrap import wrap
from typing import Any, Literal

from termcolor import colored

from .framework import Context, Finding, Severity, ValidationFindings
from .summarize import passed, summarize_findings


class ReportFormatter:
    """Plain-text rendering of findings, one section per rule."""

    def format_finding(self, finding: Finding) -> str:
        return f"  [{finding.severity.upper()}] {finding.message()}"

    def _heading(self, text: str) -> str:
        return f" {text}\n" + "-" * (len(text) + 2) + "\n"

    def _verdict(self, tally: dict[Severity, int]) -> str:
        return "  [PASS] " if tally[Severity.ERROR] == 0 and tally[Severity.FATAL] == 0 else "  [FAIL] "

    def format(self, findings: ValidationFindings[Context], summarize: bool = True) -> str:
        output = ""
        for rule, rule_findings in findings.items():
            output += self._heading(rule.metadata().name)
            if len(rule_findings) == 0:
                output += "  [SUCCESS] No findings\n"
            for finding in rule_findings:
                output += self.format_finding(finding) + "\n"
            output += "\n"

        if summarize:
            output += self._heading("Summary")
            for rule_name, tally in summarize_findings(findings).items():
                counts = ", ".join(f"{sev}: {n}" for sev, n in tally.items())
                output += self._verdict(tally) + f"{rule_name}: {counts}\n"
            output += "\n" + ("PASS" if passed(findings) else "FAIL") + "\n"

        return output


Color = Literal["red", "green", "yellow", "blue", "magenta", "cyan", "white"]
_SEVERITY_COLORS: dict[Severity, Color] = {
    Severity.ERROR: "red",
    Severity.FATAL: "red",
    Severity.WARNING: "yellow",
    Severity.INFO: "cyan",
}


def _color_severity(severity: Severity | Literal["SUCCESS"]) -> str:
    color = "green" if severity == "SUCCESS" else _SEVERITY_COLORS[severity]
    return colored("[", "white") + colored(severity.upper(), color) + colored("]", "white")


@dataclass
class ColoringReportFormatter(ReportFormatter):
    line_length: int = 80

    def format_finding(self, finding: Finding) -> str:
        return f"  {_color_severity(finding.severity)} {finding.message()}"

    def _heading(self, text: str) -> str:
        bar = colored("=" * (len(text) + 2), "cyan")
        return bar + "\n " + colored(text, "white") + "\n" + bar + "\n"

    def _verdict(self, tally: dict[Severity, int]) -> str:
        if tally[Severity.FATAL] > 0 or tally[Severity.ERROR] > 0:
            mark = colored("FAIL", "red")
        elif tally[Severity.WARNING] > 0:
            mark = colored("WARN", "yellow")
        else:
            mark = colored("PASS", "green")
        return colored("  [ ", "white") + mark + colored(" ] ", "white")

    def format(self, findings: ValidationFindings[Context], summarize: bool = True) -> str:
        output = ""
        for rule, rule_findings in findings.items():
            meta = rule.metadata()
            output += self._heading(meta.name)
            if meta.description is not None:
                output += "\n".join(wrap(meta.description, width=self.line_length)) + "\n\n"

            if len(rule_findings) == 0:
                output += f"  {_color_severity('SUCCESS')} No findings\n"
            for finding in rule_findings:
                output += self.format_finding(finding) + "\n"
            output += "\n"

        if summarize:
            output += self._heading("Summary")
            for rule_name, tally in summarize_findings(findings).items():
                output += self._verdict(tally) + rule_name + "\n"
            verdict = colored("PASS", "green") if passed(findings) else colored("FAIL", "red")
            output += "\n" + verdict + "\n"

        return output


def findings_json(findings: ValidationFindings[Context]) -> str:
    out: dict[str, Any] = {"passed": passed(findings), "rules": {}}
    for rule, rule_findings in findings.items():
        out["rules"][rule.id()] = {
            "name": rule.metadata().name,
            "findings": [
                {"finding": f.__class__.__name__, "severity": str(f.severity), "message": f.message()}
                for f in rule_findings
            ],
        }
    return json.dumps(out, indent=2, sort_keys=True) + "\n"
