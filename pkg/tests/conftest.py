"""Shared fixtures for the mbpep test suite."""

from collections.abc import Generator

import pytest
import structlog

from mbpep.core.config import get_settings
from mbpep.data import Dataset, gen_cubic, normalize
from mbpep.schemas import LossConfig


@pytest.fixture(autouse=True)
def _fresh_settings() -> Generator[None, None, None]:
    """Settings are cached per process; clear them around each test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def _reset_logging() -> Generator[None, None, None]:
    """Commands bind structlog to the CliRunner stderr; undo that after each test."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def cubic_data() -> Dataset:
    """200 normalized samples of the cubic task."""
    return normalize(gen_cubic(200, seed=11))


@pytest.fixture
def loss_cfg() -> LossConfig:
    """Default loss parameters."""
    return LossConfig()
