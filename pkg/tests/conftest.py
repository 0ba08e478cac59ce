import random

import pytest

from segnum.graph import PlanarGraph


@pytest.fixture
def rng():
    return random.Random(20240611)


def graph_of(n, edges):
    return PlanarGraph.from_edges(n, edges)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
