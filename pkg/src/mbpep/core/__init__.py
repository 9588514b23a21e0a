"""Core module containing configuration, logging, and exceptions.

- config: Process settings (pydantic-settings) and config-document loading
- logging: Structured logging with structlog
- exceptions: Custom exception hierarchy
"""

from .config import Settings, get_settings, load_config_document, merge_overrides
from .exceptions import (
    ConfigurationError,
    DataError,
    MbpepError,
    ModelFormatError,
    NonFiniteError,
    NotFoundError,
    TrainingError,
    ValidationError,
)
from .logging import get_logger, run_context, setup_logging

__all__ = [
    "Settings",
    "get_settings",
    "load_config_document",
    "merge_overrides",
    "setup_logging",
    "get_logger",
    "run_context",
    "MbpepError",
    "ConfigurationError",
    "ValidationError",
    "DataError",
    "NotFoundError",
    "ModelFormatError",
    "TrainingError",
    "NonFiniteError",
]
