from pathlib import Path

import pytest

from phishsyntax.treebank import load_trees

FIXTURES = Path(__file__).parent / "fixtures"

_criteria = {}


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture(scope="session")
def nazario_trees():
    return load_trees(FIXTURES / "update_nazario.mrg")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "SKIP" if rep.skipped else ("PASS" if rep.passed else "FAIL")
        prev = _criteria.get(number)
        if prev is None or prev[0] == "PASS":
            _criteria[number] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, text = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")
