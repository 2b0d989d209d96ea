import pytest

from mckay.catalog import ade_bundle

SMALL_ADE = ("A1", "A2", "A3", "D4", "D5", "E6")


@pytest.fixture(scope="session")
def bundles():
    """Shared cached pipeline; bundles('E8') etc."""
    return ade_bundle
