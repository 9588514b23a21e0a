"""Shared construction of services and run configurations for commands.

Commands never build repositories or validate configuration themselves;
they call the factories here.

Example usage::

    config = build_run_config(Path("run.toml"), {"train.pool_size": 10})
    get_pipeline_service().train(config)
"""

from pathlib import Path
from typing import Any

from pydantic import ValidationError as PydanticValidationError

from mbpep.core import get_settings, load_config_document, merge_overrides
from mbpep.core.exceptions import ConfigurationError
from mbpep.repositories import ModelRepository, ReportRepository
from mbpep.schemas.config import RunConfig
from mbpep.services import BenchService, PipelineService


def get_pipeline_service() -> PipelineService:
    """Create a PipelineService with file-backed repositories.

    Returns:
        PipelineService instance.
    """
    return PipelineService(ModelRepository(), ReportRepository())


def get_bench_service() -> BenchService:
    """Create a BenchService over a fresh pipeline.

    Returns:
        BenchService instance.
    """
    return BenchService(get_pipeline_service())


def build_run_config(
    config_path: Path | None,
    overrides: dict[str, Any],
) -> RunConfig:
    """Merge flag overrides over an optional config document and validate once.

    Args:
        config_path: TOML document, or None for defaults only.
        overrides: Dotted-key flag values; None entries are ignored.

    Returns:
        The validated configuration.

    Raises:
        ConfigurationError: Listing every validation failure.
    """
    document = load_config_document(config_path) if config_path is not None else {}
    merged = merge_overrides(document, overrides)
    try:
        return RunConfig.model_validate(merged)
    except PydanticValidationError as exc:
        raise ConfigurationError(
            "Invalid run configuration",
            details={
                "errors": [
                    {
                        "loc": ".".join(str(part) for part in error["loc"]),
                        "msg": error["msg"],
                    }
                    for error in exc.errors()
                ]
            },
        ) from exc


def resolve_threads(flag: int | None, config: RunConfig) -> int:
    """Thread count from the flag, the config, then MBPEP_THREADS."""
    return flag or config.threads or get_settings().threads
