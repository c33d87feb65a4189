from .config import (
    CONFIG_FILE,
    BenchConfig,
    CalibrationConfig,
    ConfigError,
    EmulationValidationConfig,
    OutputFormat,
    ReportConfig,
    RunConfig,
    SyntheticConfig,
    UsageError,
    config_from_dict,
    config_to_json,
    load_config,
)

__all__ = [
    "CONFIG_FILE",
    "BenchConfig",
    "CalibrationConfig",
    "ConfigError",
    "EmulationValidationConfig",
    "OutputFormat",
    "ReportConfig",
    "RunConfig",
    "SyntheticConfig",
    "UsageError",
    "config_from_dict",
    "config_to_json",
    "load_config",
]
