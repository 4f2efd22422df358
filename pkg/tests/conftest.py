from pathlib import Path

import pytest

from cyltangle.catalog import default_catalog_dir, ingest, verify_catalog
from cyltangle.enumeration import run_chain, run_theorem1, run_theorem2
from cyltangle.formats import read_matrix_text
from cyltangle.seidel import validate

TESTS_DIR = Path(__file__).parent


@pytest.fixture(scope="session")
def catalog_entries():
    return ingest(default_catalog_dir())


@pytest.fixture(scope="session")
def entries_by_name(catalog_entries):
    return {e.name: e for e in catalog_entries}


@pytest.fixture(scope="session")
def catalog_report(catalog_entries):
    return verify_catalog(catalog_entries)


@pytest.fixture(scope="session")
def theorem1_report():
    return run_theorem1()


@pytest.fixture(scope="session")
def theorem2_report():
    return run_theorem2()


@pytest.fixture(scope="session")
def all_n7_classes():
    """The unfiltered 54 classes at n=7."""
    from cyltangle.enumeration import enumerate_base, extend

    return extend(enumerate_base(6), frozenset())


@pytest.fixture(scope="session")
def k5free_n7_classes(theorem1_report):
    return theorem1_report.catalogs[7]


@pytest.fixture(scope="session")
def prototype18():
    return validate(read_matrix_text(TESTS_DIR / "data" / "prototype18.mat"))


@pytest.fixture(scope="session")
def prototype14():
    return validate(read_matrix_text(TESTS_DIR / "data" / "prototype14.mat"))
