"""Unit tests for process settings and config-document loading."""

from pathlib import Path

import pytest

from mbpep.core import (
    ConfigurationError,
    NotFoundError,
    Settings,
    get_settings,
    load_config_document,
    merge_overrides,
)


class TestSettings:
    """Test cases for Settings class."""

    def test_defaults(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test default values without environment overrides."""
        for name in ("MBPEP_THREADS", "MBPEP_LOG_LEVEL", "MBPEP_LOG_FORMAT"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.threads == 1
        assert settings.log_level == "INFO"
        assert settings.log_format == "console"

    def test_threads_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that MBPEP_THREADS sets the default thread count."""
        monkeypatch.setenv("MBPEP_THREADS", "3")
        assert Settings(_env_file=None).threads == 3

    def test_threads_must_be_positive(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a zero thread count is rejected."""
        monkeypatch.setenv("MBPEP_THREADS", "0")
        with pytest.raises(ValueError):
            Settings(_env_file=None)


class TestGetSettings:
    """Test cases for get_settings function."""

    def test_get_settings_is_cached(self) -> None:
        """Test that get_settings returns the same cached instance."""
        assert get_settings() is get_settings()


class TestLoadConfigDocument:
    """Test cases for reading TOML run configs."""

    def test_dotted_keys_become_tables(self, tmp_path: Path) -> None:
        """Test that flat dotted keys nest."""
        path = tmp_path / "run.toml"
        path.write_text('seed = 4\ntrain.epochs = 12\ndata.generator = "exp"\n')
        assert load_config_document(path) == {
            "seed": 4,
            "train": {"epochs": 12},
            "data": {"generator": "exp"},
        }

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing document raises NotFoundError."""
        with pytest.raises(NotFoundError):
            load_config_document(tmp_path / "absent.toml")

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Test that a malformed document raises ConfigurationError."""
        path = tmp_path / "bad.toml"
        path.write_text("train.epochs = = 3\n")
        with pytest.raises(ConfigurationError) as info:
            load_config_document(path)
        assert info.value.details["path"] == str(path)


class TestMergeOverrides:
    """Test cases for flag-over-document merging."""

    def test_override_wins_and_none_is_skipped(self) -> None:
        """Test precedence and skipping of unset flags."""
        document = {"train": {"epochs": 10, "pool_size": 5}}
        merged = merge_overrides(document, {"train.epochs": 3, "train.pool_size": None})
        assert merged == {"train": {"epochs": 3, "pool_size": 5}}

    def test_document_is_not_modified(self) -> None:
        """Test that the input mapping is left untouched."""
        document = {"loss": {"penalty_c": 15.0}}
        merge_overrides(document, {"loss.penalty_c": 1.0, "seed": 2})
        assert document == {"loss": {"penalty_c": 15.0}}

    def test_creates_missing_tables(self) -> None:
        """Test that nested tables are created on demand."""
        merged = merge_overrides({}, {"train.optimizer.learning_rate": 0.1})
        assert merged == {"train": {"optimizer": {"learning_rate": 0.1}}}

    def test_collision_with_scalar(self) -> None:
        """Test that descending into a scalar is a configuration error."""
        with pytest.raises(ConfigurationError):
            merge_overrides({"train": 3}, {"train.epochs": 1})
