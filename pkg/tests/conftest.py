import pytest

from mslekg import load_bundled
from mslekg.dataset import bundled_data_dir


@pytest.fixture(scope="session")
def bundled():
    """Bundled corpus; tests that mutate the graph must copy it."""
    return load_bundled()


@pytest.fixture(scope="session")
def data_dir():
    return bundled_data_dir()


@pytest.fixture(scope="session")
def overrange_fixture_path(data_dir):
    return data_dir / "fixtures" / "hightension-out-of-range.ttl"
