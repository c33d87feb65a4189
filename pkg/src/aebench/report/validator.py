from .framework import Rule, Validator
from .results import BenchResults
from .rules import (
    ControllerOrderingRule,
    EmulationAccuracyRule,
    ExposureClampRule,
    RPESanityRule,
    SuccessCurveRule,
)


class BenchmarkValidator(Validator[BenchResults]):
    def rules(self) -> list[Rule[BenchResults]]:
        return [
            EmulationAccuracyRule(),
            ExposureClampRule(),
            SuccessCurveRule(),
            RPESanityRule(),
            ControllerOrderingRule(),
        ]
