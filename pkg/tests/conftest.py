import pytest
from fastapi.testclient import TestClient
from hypothesis import settings

# Wall-clock deadlines make property tests flaky on cold caches; example
# counts already bound the work.
settings.register_profile("ci", deadline=None)
settings.load_profile("ci")

from potential_gis.catalog import load_catalog_dir
from potential_gis.fixture import write_fixture
from potential_gis.service import create_app


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("data")
    write_fixture(path, seed=42)
    return path


@pytest.fixture(scope="session")
def fixture_catalog(fixture_dir):
    return load_catalog_dir(fixture_dir)


@pytest.fixture(scope="session")
def client(fixture_catalog):
    return TestClient(create_app(fixture_catalog), raise_server_exceptions=False)
