"""Core library module."""
from logz.core.config import get_settings, get_settings_dict, Settings
from logz.core.exceptions import (
    LogZException,
    ConfigException,
    ValidationException,
    NumericalFailureException,
    SamplerFailureException,
    MlmcLevelFailure,
    StageFailureException,
    AcceptanceCheckException,
)
from logz.core.logging_config import setup_logging
from logz.core.rng import RngStream, as_generator

__all__ = [
    "get_settings",
    "get_settings_dict",
    "Settings",
    "LogZException",
    "ConfigException",
    "ValidationException",
    "NumericalFailureException",
    "SamplerFailureException",
    "MlmcLevelFailure",
    "StageFailureException",
    "AcceptanceCheckException",
    "setup_logging",
    "RngStream",
    "as_generator",
]
