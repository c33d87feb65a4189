"""Rules, findings and the validator that runs them over benchmark results.

A Validator holds Rules; each Rule inspects the context and returns Findings.
Every Finding class carries a default severity that users can override by
class name, so a run can decide which findings fail it.
"""

import logging

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum
from typing import Generic, Mapping, Optional, TypeVar

LOG = logging.getLogger(__name__)

Context = TypeVar("Context")


class Severity(StrEnum):
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    FATAL = "fatal"


@dataclass(init=False)
class Finding(ABC):
    """Result of a rule. Each rule produces its own Finding classes."""

    @abstractmethod
    def message(self) -> str:
        raise NotImplementedError()

    def _default_severity(self) -> Severity:
        """Override this, not get_severity, to change the default of a Finding class."""
        return Severity.ERROR

    def get_severity(self) -> Severity:
        if hasattr(self, "_severity"):
            return self._severity
        return self._default_severity()

    def set_severity(self, severity: Severity) -> None:
        self._severity = severity

    def del_severity(self) -> None:
        raise AttributeError("Cannot delete severity")

    # A property so that subclasses keep their generated __init__ and match args.
    severity = property(get_severity, set_severity, del_severity)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}: {self.message()}"

    def __str__(self) -> str:
        return self.message()


@dataclass
class RuleMetadata:
    name: str
    description: Optional[str] = None


class Rule(ABC, Generic[Context]):
    def __hash__(self):
        return hash(self.__class__)

    def id(self) -> str:
        return self.__class__.__name__

    @abstractmethod
    def metadata(self) -> RuleMetadata:
        raise NotImplementedError()

    @abstractmethod
    def validate(self, context: Context) -> list[Finding]:
        raise NotImplementedError()


class FatalFindingError(Exception):
    """Raised as soon as a finding with FATAL severity is produced."""

    def __init__(self, finding: Finding):
        super().__init__(f"Encountered fatal finding: {finding}")
        self.finding = finding


ValidationFindings = dict[Rule[Context], list[Finding]]


class Validator(ABC, Generic[Context]):
    def __init__(self, context: Context, severities: Optional[Mapping[str, Severity]] = None):
        """
        Args:
            context: What the rules inspect.
            severities: Finding class name to severity overrides.
        """
        self.context = context
        self._severities = dict(severities) if severities else {}

    @abstractmethod
    def rules(self) -> list[Rule[Context]]:
        raise NotImplementedError()

    def _override_severity(self, finding: Finding) -> None:
        name = finding.__class__.__name__
        if name in self._severities:
            finding.severity = Severity(self._severities[name])

    def validate(self) -> ValidationFindings[Context]:
        findings: ValidationFindings[Context] = {}
        LOG.info("Checking benchmark results")

        for rule in self.rules():
            findings[rule] = []
            results = rule.validate(self.context)
            for finding in results:
                self._override_severity(finding)
                if finding.severity == Severity.FATAL:
                    raise FatalFindingError(finding)
                findings[rule].append(finding)

            LOG.info(f"{len(results)} findings for rule {rule.metadata().name}")

        return findings


def validate_severities(severities: Mapping[str, str]) -> dict[str, Severity]:
    """Check a finding-name to severity map and convert its values.

    Raises:
        ValueError: If a severity is not one of info, warning, error, fatal.
    """
    valid = [s.value for s in Severity]
    out: dict[str, Severity] = {}
    for cls, severity in severities.items():
        if severity not in valid:
            raise ValueError(f"Invalid severity value: {cls} = {severity}")
        out[cls] = Severity(severity)
    return out
