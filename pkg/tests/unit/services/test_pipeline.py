"""Unit tests for PipelineService."""

from pathlib import Path

import numpy as np
import pytest

from mbpep.core import DataError
from mbpep.data import Dataset, denormalize, gen_cubic, load_csv, normalize, save_csv
from mbpep.ensemble import fused_batch
from mbpep.repositories import ModelRepository, ReportRepository
from mbpep.schemas import RunConfig
from mbpep.services import PipelineService, prepare_data, write_trace
from tests.helpers import make_pool, tiny_run_config


@pytest.fixture
def service() -> PipelineService:
    return PipelineService(ModelRepository(), ReportRepository())


def output_config(tmp_path: Path, **sections: object) -> RunConfig:
    return tiny_run_config(
        output={
            "model_path": str(tmp_path / "model.json"),
            "trace_path": str(tmp_path / "trace.csv"),
        },
        **sections,
    )


class TestPrepareData:
    """Test cases for prepare_data."""

    def test_split_sizes_and_norm(self) -> None:
        """Test 50/20/30 splits normalized on train statistics."""
        prepared = prepare_data(tiny_run_config())
        assert (len(prepared.train), len(prepared.valid), len(prepared.test)) == (45, 18, 27)
        assert prepared.train.features.min() == 0.0
        assert prepared.train.features.max() == 1.0
        assert prepared.test.norm is prepared.norm
        assert prepared.source == "generator:cubic"

    def test_deterministic(self) -> None:
        """Test equal configs give equal splits."""
        a = prepare_data(tiny_run_config())
        b = prepare_data(tiny_run_config())
        np.testing.assert_array_equal(a.test.targets, b.test.targets)


class TestPipelineRun:
    """Test cases for PipelineService.run."""

    def test_pruned_and_unpruned(self, service: PipelineService) -> None:
        """Test the report carries both evaluations."""
        outcome = service.run(tiny_run_config())
        report = outcome.report
        assert report.test.ensemble_size == outcome.pool.ensemble_size
        assert report.test_unpruned.ensemble_size == outcome.pool.size == 3
        assert report.pruning is not None
        assert report.pruning.f_chosen <= report.pruning.f_full
        assert report.pruning.iterations_run == 20
        assert report.pruning.chosen_mask == [int(b) for b in outcome.pool.selection_mask]
        assert report.train_seconds is None
        assert report.test.prediction_seconds is None

    def test_no_prune_keeps_all(self, service: PipelineService) -> None:
        """Test that skipping pruning selects every learner."""
        outcome = service.run(tiny_run_config(prune={"enabled": False}))
        assert outcome.pool.selection_mask.all()
        assert outcome.report.pruning is None
        assert outcome.archive is None
        assert outcome.report.test == outcome.report.test_unpruned.model_copy(
            update={"split": "test"}
        )

    def test_timings_on_request(self, service: PipelineService) -> None:
        """Test wall-clock fields when asked for."""
        outcome = service.run(tiny_run_config(), include_timings=True)
        assert outcome.report.train_seconds is not None
        assert outcome.report.test.prediction_seconds is not None

    def test_reproducible(self, service: PipelineService) -> None:
        """Test equal configs give equal reports."""
        first = service.run(tiny_run_config()).report
        second = service.run(tiny_run_config()).report
        assert first.model_dump_json() == second.model_dump_json()


class TestPipelineFiles:
    """Test cases for train and evaluate_model."""

    def test_train_writes_outputs(self, service: PipelineService, tmp_path: Path) -> None:
        """Test model, report and trace files."""
        config = output_config(tmp_path)
        service.train(config)
        assert (tmp_path / "model.json").is_file()
        assert (tmp_path / "model.report.json").is_file()
        trace = (tmp_path / "trace.csv").read_text().splitlines()
        assert trace[0] == "x,y,y_lower,y_upper"
        assert len(trace) == 1 + 27

    def test_evaluate_stored_split(self, service: PipelineService, tmp_path: Path) -> None:
        """Test that eval without data reproduces the train report."""
        outcome = service.train(output_config(tmp_path))
        report = service.evaluate_model(tmp_path / "model.json")
        assert report.data_source == "stored_test_split"
        assert report.result == outcome.report.test

    def test_evaluate_csv(self, service: PipelineService, tmp_path: Path) -> None:
        """Test evaluation on an external CSV in original units."""
        service.train(output_config(tmp_path))
        data_path = tmp_path / "fresh.csv"
        save_csv(gen_cubic(40, seed=99), data_path)
        report = service.evaluate_model(
            tmp_path / "model.json", data_path=data_path, report_path=tmp_path / "eval.json"
        )
        assert report.result.n_samples == 40
        assert report.data_source == str(data_path)
        assert ReportRepository().load_eval(tmp_path / "eval.json") == report

    def test_evaluate_dimension_mismatch(
        self, service: PipelineService, tmp_path: Path
    ) -> None:
        """Test a CSV with the wrong column count."""
        service.train(output_config(tmp_path))
        data_path = tmp_path / "wide.csv"
        data_path.write_text("a,b,y\n1,2,3\n4,5,6\n")
        with pytest.raises(DataError):
            service.evaluate_model(tmp_path / "model.json", data_path=data_path)

    def test_trace_in_original_units(self, service: PipelineService, tmp_path: Path) -> None:
        """Test that trace targets match the raw test rows."""
        outcome = service.train(output_config(tmp_path))
        trace = load_csv(tmp_path / "trace.csv", "y")
        raw = denormalize(outcome.data.test)
        np.testing.assert_allclose(trace.targets, raw.targets, rtol=1e-12)
        np.testing.assert_allclose(trace.features[:, 0], raw.features[:, 0], rtol=1e-12)

    def test_trace_with_constant_target(self, tmp_path: Path) -> None:
        """Test that a constant target still yields one unit across trace columns."""
        raw = Dataset(features=np.linspace(2.0, 4.0, 30), targets=np.full(30, -3.0))
        data = normalize(raw)
        pool = make_pool(3)
        write_trace(pool, data, tmp_path / "trace.csv")

        trace = load_csv(tmp_path / "trace.csv", "y")
        bounds = fused_batch(pool, data)
        np.testing.assert_allclose(trace.targets, -3.0)
        np.testing.assert_allclose(trace.features[:, 0], raw.features[:, 0], rtol=1e-12)
        np.testing.assert_allclose(trace.features[:, 1], bounds.lower - 3.5, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(trace.features[:, 2], bounds.upper - 3.5, rtol=1e-12, atol=1e-12)
