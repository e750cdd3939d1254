import os

import pytest

from rtlgraphs import compile_system
from rtlgraphs.library import alex, alexbis
from rtlgraphs.unfolding import grid_automaton, unfold_rtl

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _RESULTS.append((mark.args[0], mark.args[1], rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, outcome, dur in sorted(_RESULTS):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:>2}: {verdict}  {title} ({dur:.1f} s)")


@pytest.fixture(scope="session")
def alexbis_pres():
    return compile_system(alexbis())


@pytest.fixture(scope="session")
def alex_pres():
    return compile_system(alex())


@pytest.fixture(scope="session")
def grid_tree_pres():
    return compile_system(unfold_rtl(grid_automaton(with_c=True)))


@pytest.fixture(scope="session")
def grid_tree_final_pres():
    return compile_system(unfold_rtl(grid_automaton(with_c=True, finals=True)))


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RTLGRAPHS_SKIP_SLOW"):
        skip = pytest.mark.skip(reason="RTLGRAPHS_SKIP_SLOW is set")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip)
