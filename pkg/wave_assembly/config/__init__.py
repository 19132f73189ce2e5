"""Run configuration for wave-assembly."""

from .config import (
    CoefficientConfig,
    ConfigError,
    GridConfig,
    MaterialConfig,
    RunConfig,
    load_config,
    parse_config,
)

__all__ = [
    "CoefficientConfig",
    "ConfigError",
    "GridConfig",
    "MaterialConfig",
    "RunConfig",
    "load_config",
    "parse_config",
]
