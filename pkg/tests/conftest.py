from __future__ import annotations

import pytest

from beilab.services.bei import binomial_edge_ideal
from beilab.services.graph import Graph, named_graph
from beilab.services.polynomial import PolynomialRing, PrimeField


def graph(name: str) -> Graph:
    G = named_graph(name)
    assert G is not None, name
    return G


@pytest.fixture
def k3() -> Graph:
    return graph("K3")


@pytest.fixture
def p3() -> Graph:
    return graph("P3")


@pytest.fixture
def net() -> Graph:
    return graph("net")


@pytest.fixture
def closed_not_cm() -> Graph:
    # maximal cliques [1,3] and [2,4]
    return Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def k3_plus_k2() -> Graph:
    return Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (4, 5)])


@pytest.fixture
def ring2() -> PolynomialRing:
    return PolynomialRing(2)


@pytest.fixture
def gf7() -> PrimeField:
    return PrimeField(7)


@pytest.fixture
def j_k3(k3):
    return binomial_edge_ideal(k3)
