"""Allow ``python -m mbpep``."""

from mbpep.main import run

run()
