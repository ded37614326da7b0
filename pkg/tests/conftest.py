import pytest

from pbzkit import catalog, catalog_names


@pytest.fixture(scope="session")
def catalog_algebras():
    return {name: catalog(name) for name in catalog_names()}


def bounded_with_inv():
    return [n for n in catalog_names() if catalog(n).signature.bounded and catalog(n).has_op("inv")]


def bz_names():
    return [n for n in catalog_names() if catalog(n).has_op("brouwer")]


def modal_names():
    return [n for n in catalog_names() if catalog(n).has_op("diamond")]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, line
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(line(n))
