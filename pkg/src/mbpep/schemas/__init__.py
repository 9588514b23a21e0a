"""Pydantic schemas for configs, reports and the model file."""

from mbpep.schemas.config import (
    Activation,
    BoundMode,
    DataSourceConfig,
    Generator,
    LossConfig,
    ObjectiveLoss,
    ObjectiveSplit,
    OptimizerConfig,
    OptimizerKind,
    OutputConfig,
    PruneConfig,
    RunConfig,
    SelectionRule,
    SplitSpec,
    TrainConfig,
)
from mbpep.schemas.model_file import (
    MODEL_VERSION,
    LearnerDocument,
    ModelDocument,
    NormalizationDocument,
)
from mbpep.schemas.report import (
    REPORT_VERSION,
    ArchiveEntryReport,
    BenchFailure,
    BenchPoolSummary,
    BenchReport,
    BenchRunRecord,
    EvalCommandReport,
    EvalReport,
    LearnerFailureReport,
    LossReport,
    MetricSummary,
    PruneReport,
    TrainReport,
)

__all__ = [
    "Activation",
    "BoundMode",
    "DataSourceConfig",
    "Generator",
    "LossConfig",
    "ObjectiveLoss",
    "ObjectiveSplit",
    "OptimizerConfig",
    "OptimizerKind",
    "OutputConfig",
    "PruneConfig",
    "RunConfig",
    "SelectionRule",
    "SplitSpec",
    "TrainConfig",
    "MODEL_VERSION",
    "LearnerDocument",
    "ModelDocument",
    "NormalizationDocument",
    "REPORT_VERSION",
    "ArchiveEntryReport",
    "BenchFailure",
    "BenchPoolSummary",
    "BenchReport",
    "BenchRunRecord",
    "EvalCommandReport",
    "EvalReport",
    "LearnerFailureReport",
    "LossReport",
    "MetricSummary",
    "PruneReport",
    "TrainReport",
]
