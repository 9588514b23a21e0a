"""Services package initialization.

This package contains the orchestration layer: the training pipeline and
the repeated-run bench built on it.
"""

from mbpep.services.bench import BenchService, format_summary, summarize, summarize_evals
from mbpep.services.pipeline import (
    PipelineOutcome,
    PipelineService,
    PreparedData,
    load_source,
    prepare_data,
    write_trace,
)

__all__ = [
    "BenchService",
    "PipelineOutcome",
    "PipelineService",
    "PreparedData",
    "format_summary",
    "load_source",
    "prepare_data",
    "summarize",
    "summarize_evals",
    "write_trace",
]
