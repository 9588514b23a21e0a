"""Unit tests for CSV ingestion and emission."""

from pathlib import Path

import numpy as np
import pytest

from mbpep.core import DataError, NotFoundError
from mbpep.data import gen_cubic, load_csv, save_csv, save_trace
from mbpep.piloss import IntervalBatch


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "data.csv"
    path.write_text(text)
    return path


class TestLoadCsv:
    """Test cases for load_csv."""

    def test_last_column_is_target(self, tmp_path: Path) -> None:
        """Test the default target choice and column names."""
        data = load_csv(write(tmp_path, "a,b,y\n1,2,3\n4,5,6\n"))
        np.testing.assert_array_equal(data.features, [[1, 2], [4, 5]])
        np.testing.assert_array_equal(data.targets, [3, 6])
        assert data.feature_names == ("a", "b")
        assert data.target_name == "y"

    def test_named_target(self, tmp_path: Path) -> None:
        """Test selecting the target by name."""
        data = load_csv(write(tmp_path, "price,x\n10,1\n20,2\n"), target_column="price")
        np.testing.assert_array_equal(data.targets, [10, 20])
        assert data.feature_names == ("x",)

    def test_trailing_blank_lines_ignored(self, tmp_path: Path) -> None:
        """Test that blank lines at the end are skipped."""
        assert len(load_csv(write(tmp_path, "x,y\n1,2\n3,4\n\n\n"))) == 2

    def test_non_numeric_cell_location(self, tmp_path: Path) -> None:
        """Test that the error names file row and 1-based column."""
        with pytest.raises(DataError) as info:
            load_csv(write(tmp_path, "x,y\n1,2\n3,abc\n"))
        assert info.value.details["row"] == 3
        assert info.value.details["column"] == 2
        assert info.value.details["value"] == "abc"

    def test_interior_blank_line_rejected(self, tmp_path: Path) -> None:
        """Test that a blank line between rows is reported at its file line."""
        with pytest.raises(DataError) as info:
            load_csv(write(tmp_path, "x,y\n1,1\n\n2,8\n3,abc"))
        assert info.value.details["row"] == 3

    def test_bad_cell_row_is_file_line(self, tmp_path: Path) -> None:
        """Test that the reported row is the line a text editor shows."""
        text = "x,y\n1,1\n2,8\n3,abc\n\n"
        with pytest.raises(DataError) as info:
            load_csv(write(tmp_path, text))
        assert text.splitlines()[info.value.details["row"] - 1] == "3,abc"

    def test_missing_cell(self, tmp_path: Path) -> None:
        """Test that an empty cell is reported."""
        with pytest.raises(DataError) as info:
            load_csv(write(tmp_path, "x,y\n1,\n"))
        assert info.value.details["row"] == 2

    def test_malformed_row(self, tmp_path: Path) -> None:
        """Test that a row with too many fields is rejected."""
        with pytest.raises(DataError):
            load_csv(write(tmp_path, "x,y\n1,2\n3,4,5\n"))

    def test_header_only(self, tmp_path: Path) -> None:
        """Test that an empty body is rejected."""
        with pytest.raises(DataError):
            load_csv(write(tmp_path, "x,y\n"))

    def test_single_column(self, tmp_path: Path) -> None:
        """Test that a feature column is required."""
        with pytest.raises(DataError):
            load_csv(write(tmp_path, "y\n1\n2\n"))

    def test_unknown_target(self, tmp_path: Path) -> None:
        """Test that a missing target column is reported."""
        with pytest.raises(DataError):
            load_csv(write(tmp_path, "x,y\n1,2\n"), target_column="z")

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test NotFoundError for an absent file."""
        with pytest.raises(NotFoundError):
            load_csv(tmp_path / "absent.csv")


class TestSaveCsv:
    """Test cases for save_csv and save_trace."""

    def test_written_file_reloads(self, tmp_path: Path) -> None:
        """Test that saved datasets load back with the same values."""
        data = gen_cubic(25, seed=1)
        path = tmp_path / "nested" / "cubic.csv"
        save_csv(data, path)
        again = load_csv(path)
        np.testing.assert_allclose(again.features, data.features, rtol=1e-15)
        np.testing.assert_allclose(again.targets, data.targets, rtol=1e-15)
        assert path.read_text().splitlines()[0] == "x,y"

    def test_identical_inputs_give_identical_bytes(self, tmp_path: Path) -> None:
        """Test byte-level determinism."""
        save_csv(gen_cubic(30, seed=9), tmp_path / "a.csv")
        save_csv(gen_cubic(30, seed=9), tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_trace_columns(self, tmp_path: Path) -> None:
        """Test trace header and row count."""
        data = gen_cubic(5, seed=1)
        batch = IntervalBatch(data.targets - 1, data.targets + 1, data.targets)
        path = tmp_path / "trace.csv"
        save_trace(data, batch, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,y,y_lower,y_upper"
        assert len(lines) == 6

    def test_trace_length_mismatch(self, tmp_path: Path) -> None:
        """Test that trace lengths must match."""
        data = gen_cubic(5, seed=1)
        batch = IntervalBatch(np.zeros(4), np.ones(4), np.zeros(4))
        with pytest.raises(DataError):
            save_trace(data, batch, tmp_path / "t.csv")
