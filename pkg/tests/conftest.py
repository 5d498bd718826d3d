import numpy as np
import pytest

from opinion_partition import from_adjacency


def random_connected_graph(rng, n, extra_p=None, weighted=True):
    """Random spanning tree plus independent extra edges, weights in (0, 1]."""
    if extra_p is None:
        extra_p = rng.uniform(0.0, 0.4)
    a = np.zeros((n, n))
    order = rng.permutation(n)
    for k in range(1, n):
        i, j = order[k], order[rng.integers(k)]
        a[i, j] = a[j, i] = 1.0
    extra = np.triu(rng.random((n, n)) < extra_p, 1)
    a = np.maximum(a, extra + extra.T)
    if weighted:
        w = 1.0 - rng.random((n, n))  # (0, 1]
        w = np.triu(w, 1)
        a = a * (w + w.T)
    return from_adjacency(a)


def random_corpus(seed, count, n_min, n_max, **kw):
    rng = np.random.default_rng(seed)
    return [random_connected_graph(rng, int(rng.integers(n_min, n_max + 1)), **kw) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus200():
    """200 random connected weighted graphs, n in [3, 50]; every 10th is a tree."""
    rng = np.random.default_rng(20240601)
    graphs = []
    for k in range(200):
        n = int(rng.integers(3, 51))
        graphs.append(random_connected_graph(rng, n, extra_p=0.0 if k % 10 == 0 else None))
    return graphs


# -- acceptance report ---------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
