"""Shared pytest fixtures."""

import pytest

from src.infrastructure.logging import reset_logger


@pytest.fixture(autouse=True)
def fresh_logger():
    """Rebuild the global logger per test so its handler writes to the current stderr."""
    reset_logger()
    yield
    reset_logger()
