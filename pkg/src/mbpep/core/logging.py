"""structlog setup for the command line and library code.

Events are snake_case names with key-value context, e.g.
``logger.info("pool_trained", learners=5, failed=0)``. Everything is written
to stderr so that stdout carries only command output (report JSON, summary
tables). Keys bound with `run_context` are merged into every event logged
inside the block on the same thread.
"""

import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any

import structlog

from mbpep.core.config import get_settings


def setup_logging(level: str | None = None) -> None:
    """Point structlog at stderr with the configured level and renderer.

    Safe to call again; the last call wins.

    Args:
        level: Level name overriding ``MBPEP_LOG_LEVEL`` (the ``--log-level`` flag).
    """
    settings = get_settings()
    threshold = logging.getLevelNamesMapping().get(
        (level or settings.log_level).upper(), logging.INFO
    )

    # numpy/pandas warnings routed through stdlib logging end up on stderr too
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=threshold, force=True)

    processors: list[Any] = [
        # keys bound by run_context
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        # logger.info("loaded %s rows", n) style calls
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.StackInfoRenderer(),
        # bytes values become str
        structlog.processors.UnicodeDecoder(),
    ]
    if settings.log_format == "json":
        processors += [
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(sort_keys=True),
        ]
    else:
        # no ANSI colours
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(threshold),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str | None = None) -> structlog.BoundLogger:
    """Module logger; call as ``logger = get_logger(__name__)``."""
    return structlog.get_logger(name)


@contextmanager
def run_context(**values: Any) -> Iterator[None]:
    """Bind ``values`` to every event logged in this thread inside the block.

    Example::

        with run_context(command="train", seed=3):
            logger.info("pipeline_run_complete")  # carries command and seed
    """
    with structlog.contextvars.bound_contextvars(**values):
        yield
