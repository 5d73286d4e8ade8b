import pytest

from resonax.cli import ServiceClient


@pytest.fixture(scope="session")
def service():
    """In-process client for the HTTP app (same path the CLI uses)."""
    return ServiceClient(None)
