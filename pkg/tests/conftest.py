import numpy as np
import pytest

from cospread import build_graph


@pytest.fixture
def path5():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 4)], directed=False)


@pytest.fixture
def star6():
    return build_graph([(0, i) for i in range(1, 6)], directed=False)


def complete_graph(n, directed=False):
    edges = [(i, j) for i in range(n) for j in range(n) if i != j]
    return build_graph(edges, directed=directed)


def random_graph(rng, n, p, directed=False):
    mask = rng.random((n, n)) < p
    if directed:
        np.fill_diagonal(mask, False)
        edges = np.argwhere(mask)
    else:
        edges = np.argwhere(np.triu(mask, k=1))
    return build_graph(edges, directed=directed, node_count=n)
