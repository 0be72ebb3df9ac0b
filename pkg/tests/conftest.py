"""Shared fixtures for the test suite."""

import pytest

from frobenius_checker.config import get_settings
from frobenius_checker.core.builders import standard_corpus
from frobenius_checker.main import configure_logging


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Route library logs to stderr at WARNING, as the CLI does."""
    configure_logging(get_settings())


@pytest.fixture(scope="session")
def corpus():
    """The named standard corpus."""
    return standard_corpus()
