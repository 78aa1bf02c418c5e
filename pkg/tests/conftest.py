import pytest

from airyproc import asymptotics


@pytest.fixture(scope="session")
def table():
    """One Hastings-McLeod table shared by the whole session."""
    return asymptotics.default_table()
