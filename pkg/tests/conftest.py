"""
Shared pytest fixtures
"""

from pathlib import Path

import pytest

from utils.logging_config import setup_logging

EXAMPLES_DIR = Path(__file__).resolve().parent.parent / "data" / "examples"


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    """Keep library logs on stderr and below the noise floor of test output."""
    setup_logging({"level": "WARNING", "format": "console"})


@pytest.fixture
def example_path():
    """Path of a bundled example document."""
    def path(name: str) -> str:
        return str(EXAMPLES_DIR / name)
    return path
