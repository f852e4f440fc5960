import numpy as np
import pytest

from twochoices.graph import Graph


def make(n, edges):
    return Graph.from_edges(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2))


def clique(n, offset=0):
    return [(offset + i, offset + j) for i in range(n) for j in range(i + 1, n)]


def random_graph(rng, n, p):
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return make(n, np.column_stack([iu[keep], ju[keep]]))


@pytest.fixture
def k3():
    return make(3, clique(3))


@pytest.fixture
def k4():
    return make(4, clique(4))


@pytest.fixture
def star():
    return make(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def path4():
    return make(4, [(0, 1), (1, 2), (2, 3)])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num][1])
