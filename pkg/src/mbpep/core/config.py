"""Process configuration and run-config document loading.

`Settings` holds process-level knobs read from the environment (prefix
``MBPEP_``) and an optional ``.env`` file. Experiment parameters live in
`mbpep.schemas.config.RunConfig`; this module only reads the TOML document
and merges command-line overrides into it.
"""

import tomllib
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from mbpep.core.exceptions import ConfigurationError, NotFoundError


class Settings(BaseSettings):
    """Process settings loaded from environment variables.

    Attributes:
        threads: Default worker count for training and benches (MBPEP_THREADS).
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        log_format: Log output format ("json" for pipelines, "console" for humans).
    """

    model_config = SettingsConfigDict(
        env_prefix="MBPEP_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    threads: int = Field(
        default=1,
        ge=1,
        description="Default number of worker threads",
    )
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    log_format: Literal["json", "console"] = "console"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Returns:
        Settings: Cached process settings.
    """
    return Settings()


def load_config_document(path: Path) -> dict[str, Any]:
    """Read a TOML run-config document.

    Dotted keys such as ``train.epochs = 300`` become nested tables, which is
    the shape `RunConfig` validates.

    Args:
        path: Location of the document.

    Returns:
        The parsed document as nested dictionaries.

    Raises:
        NotFoundError: If the file does not exist.
        ConfigurationError: If the file is not valid TOML.
    """
    if not path.is_file():
        raise NotFoundError("Config file not found", details={"path": str(path)})
    try:
        with path.open("rb") as handle:
            return tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(
            "Config file is not valid TOML",
            details={"path": str(path), "error": str(exc)},
        ) from exc


def merge_overrides(
    document: dict[str, Any],
    overrides: dict[str, Any],
) -> dict[str, Any]:
    """Merge dotted-key overrides into a nested config document.

    ``None`` values are skipped so unset flags never mask document values.

    Args:
        document: Nested mapping from `load_config_document` (not modified).
        overrides: Flat mapping such as ``{"train.pool_size": 10}``.

    Returns:
        A new nested mapping with the overrides applied.
    """
    merged = _deep_copy(document)
    for dotted, value in overrides.items():
        if value is None:
            continue
        *parents, leaf = dotted.split(".")
        node = merged
        for key in parents:
            child = node.setdefault(key, {})
            if not isinstance(child, dict):
                raise ConfigurationError(
                    "Override collides with a scalar config value",
                    details={"key": dotted},
                )
            node = child
        node[leaf] = value
    return merged


def _deep_copy(document: dict[str, Any]) -> dict[str, Any]:
    return {
        key: _deep_copy(value) if isinstance(value, dict) else value
        for key, value in document.items()
    }
