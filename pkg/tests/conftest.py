from fractions import Fraction

import pytest

from antimagic import Graph, classify
from antimagic.enumerate import enumerate_connected

GRID = [
    (Fraction(1), Fraction(1)),
    (Fraction(1, 4), Fraction(1, 3)),
    (Fraction(3), Fraction(7, 2)),
    (Fraction(10), Fraction(1)),
]


def qualifying_corpus(max_vertices=7):
    """Connected graphs with at least three edges whose vertices of degree
    >= 3 are all support vertices."""
    out = []
    for g in enumerate_connected(max_vertices):
        c = classify(g)
        if g.m >= 3 and c.deg3 <= c.supports:
            out.append(g)
    return out


@pytest.fixture(scope="session")
def corpus():
    return qualifying_corpus(7)


@pytest.fixture
def paw():
    # triangle 0-1-2 with the pendant edge 0-3
    return Graph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3)])


_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if report.failed:
        _CRITERIA[n] = (title, "FAIL")
    elif report.when == "call":
        _CRITERIA.setdefault(n, (title, "PASS"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}")
