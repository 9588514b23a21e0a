"""Unit tests for ReportRepository."""

import json
from pathlib import Path

import pytest

from mbpep.core import ModelFormatError
from mbpep.data import Dataset
from mbpep.ensemble import evaluate
from mbpep.repositories import ModelRepository, ReportRepository
from mbpep.schemas import BenchReport, EvalCommandReport, LossConfig
from mbpep.services import BenchService, PipelineService
from tests.helpers import make_pool, tiny_run_config


@pytest.fixture
def eval_report(cubic_data: Dataset, loss_cfg: LossConfig) -> EvalCommandReport:
    return EvalCommandReport(
        model_path="model.json",
        data_source="stored_test_split",
        result=evaluate(make_pool(2), cubic_data, loss_cfg, include_timing=False),
    )


class TestReportRepository:
    """Test cases for report documents."""

    def test_save_and_load(self, eval_report: EvalCommandReport, tmp_path: Path) -> None:
        """Test an eval report round trip."""
        repo = ReportRepository()
        path = repo.save(eval_report, tmp_path / "nested" / "eval.json")
        assert repo.load_eval(path) == eval_report

    def test_document_header(self, eval_report: EvalCommandReport, tmp_path: Path) -> None:
        """Test the version and kind fields."""
        path = ReportRepository().save(eval_report, tmp_path / "eval.json")
        document = json.loads(path.read_text())
        assert document["schema_version"] == "mbpep-report/1"
        assert document["kind"] == "eval"
        assert document["result"]["prediction_seconds"] is None

    def test_wrong_kind(self, eval_report: EvalCommandReport, tmp_path: Path) -> None:
        """Test loading an eval report as a train report."""
        repo = ReportRepository()
        path = repo.save(eval_report, tmp_path / "eval.json")
        with pytest.raises(ModelFormatError):
            repo.load_train(path)

    def test_bench_round_trip(self, tmp_path: Path) -> None:
        """Test that a bench report reloads equal, timings and "NA" included."""
        repo = ReportRepository()
        bench = BenchService(PipelineService(ModelRepository(), repo))
        report = bench.run(tiny_run_config(), pool_sizes=[2], repeats=1)
        path = repo.save(report, tmp_path / "bench.json")

        loaded = repo.load_bench(path)
        assert isinstance(loaded, BenchReport)
        assert loaded == report
        assert loaded.summaries[0].pruned["picp_hard"].stderr == "NA"
        assert json.loads(path.read_text())["kind"] == "bench"
        with pytest.raises(ModelFormatError):
            repo.load_eval(path)
