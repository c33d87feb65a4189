from .framework import Context, Severity, ValidationFindings


def count_severity(findings: ValidationFindings[Context], severity: Severity) -> int:
    """Number of findings with `severity` across all rules."""
    return sum(1 for rule_findings in findings.values() for f in rule_findings if f.severity == severity)


FindingSummary = dict[str, dict[Severity, int]]


def summarize_findings(findings: ValidationFindings[Context]) -> FindingSummary:
    """Tally by rule name and severity, e.g. `{"Emulation accuracy": {"info": 0, "warning": 1, ...}}`."""
    summary: FindingSummary = {}
    for rule, rule_findings in findings.items():
        tally = {sev: 0 for sev in Severity}
        for finding in rule_findings:
            tally[finding.severity] += 1
        summary[rule.metadata().name] = tally
    return summary


def passed(findings: ValidationFindings[Context]) -> bool:
    return count_severity(findings, Severity.ERROR) == 0 and count_severity(findings, Severity.FATAL) == 0
