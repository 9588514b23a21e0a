"""Repository for report documents ("mbpep-report/1")."""

from pathlib import Path

from mbpep.repositories.base import JsonDocumentRepository
from mbpep.schemas.report import (
    REPORT_VERSION,
    BenchReport,
    EvalCommandReport,
    TrainReport,
)

ReportDocument = TrainReport | EvalCommandReport | BenchReport


class ReportRepository:
    """Writes and reads the three report kinds.

    Example::

        ReportRepository().save(outcome.report, Path("run.report.json"))
    """

    def __init__(self) -> None:
        """Initialize one document repository per report kind."""
        self._train = JsonDocumentRepository(TrainReport, REPORT_VERSION)
        self._eval = JsonDocumentRepository(EvalCommandReport, REPORT_VERSION)
        self._bench = JsonDocumentRepository(BenchReport, REPORT_VERSION)

    def save(self, report: ReportDocument, path: Path) -> Path:
        """Write ``report`` as indented JSON."""
        return self._for(report).write(report, path)

    def load_train(self, path: Path) -> TrainReport:
        """Read a train report."""
        return self._train.read(path)

    def load_eval(self, path: Path) -> EvalCommandReport:
        """Read an eval report."""
        return self._eval.read(path)

    def load_bench(self, path: Path) -> BenchReport:
        """Read a bench report."""
        return self._bench.read(path)

    def _for(self, report: ReportDocument) -> JsonDocumentRepository:  # type: ignore[type-arg]
        if isinstance(report, TrainReport):
            return self._train
        if isinstance(report, EvalCommandReport):
            return self._eval
        return self._bench
