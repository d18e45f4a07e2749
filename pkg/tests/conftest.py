from importlib import resources

import pytest

from octo_so8 import load_fixtures, run_all
from octo_so8.fixtures import FIXTURE_FILES


@pytest.fixture(scope="session")
def fx():
    return load_fixtures()


@pytest.fixture(scope="session")
def report(fx):
    # one canonical run shared by the report-shape tests
    return run_all(fx)


@pytest.fixture()
def data_copy(tmp_path):
    """The bundled fixture files copied into a throwaway directory."""
    root = resources.files("octo_so8") / "data"
    for name in FIXTURE_FILES:
        (tmp_path / name).write_bytes((root / name).read_bytes())
    return tmp_path
