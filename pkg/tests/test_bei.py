from __future__ import annotations

from functools import reduce

import pytest

from beilab.errors import CapacityError, DomainError
from beilab.services.bei import (
    NET_WITNESS,
    binomial_edge_ideal,
    clique_splitting,
    cm_closed,
    complete_graph_regular_sequence,
    dimension_from_cut_sets,
    induced_matching_number,
    initial_bipartite_graph,
    is_regular_sequence,
    minimal_primes,
    minor,
    net_witness_family,
    powers_cm_prediction,
    symbolic_equals_ordinary,
    symbolic_power,
    symbolic_power_membership,
    unmixed,
    verify_witness,
    witness_memberships,
)
from beilab.services.graph import PATTERNS, Graph, find_induced
from beilab.services.ideal import Ideal
from beilab.services.polynomial import PolynomialRing, PrimeField, parse_polynomial
from beilab.settings import settings

from .conftest import graph


# ---------------------------------------------------------------------------
# primes and dimension
# ---------------------------------------------------------------------------


def test_minimal_primes_of_path(p3):
    primes = minimal_primes(p3)
    assert [p.W for p in primes] == [(), (2,)]
    assert [p.height for p in primes] == [2, 2]
    assert len(primes[0].generators) == 3
    assert primes[1].ideal().equals(Ideal(primes[1].ring, [primes[1].ring.x(2), primes[1].ring.y(2)]))


def test_primes_intersect_to_the_ideal(p3):
    meet = reduce(lambda a, b: a.intersection(b), (p.ideal() for p in minimal_primes(p3)))
    assert meet.equals(binomial_edge_ideal(p3))


def test_dimension_from_cut_sets_matches_hilbert_series():
    for name in ("K3", "P4", "claw", "C4"):
        G = graph(name)
        assert dimension_from_cut_sets(G) == binomial_edge_ideal(G).krull_dimension(), name


def test_claw_is_not_unmixed():
    claw = graph("claw")
    assert dimension_from_cut_sets(claw) == 6
    assert not unmixed(claw)
    assert unmixed(graph("P4"))


# ---------------------------------------------------------------------------
# Cohen-Macaulay closed graphs
# ---------------------------------------------------------------------------


def test_cm_closed_path():
    result = cm_closed(graph("P4"))
    assert result.cm and result.unmixed
    assert result.interval_forms == [[1, 2, 3, 4]]


def test_closed_but_not_cm(closed_not_cm):
    result = cm_closed(closed_not_cm)
    assert not result.cm
    assert not result.unmixed
    assert result.interval_forms is None


def test_cm_closed_past_the_cut_set_budget(monkeypatch):
    monkeypatch.setattr(settings, "cut_set_max_n", 2)
    result = cm_closed(graph("P4"))
    assert result.cm
    assert result.unmixed is None


def test_cm_closed_per_component(k3_plus_k2):
    result = cm_closed(k3_plus_k2)
    assert result.cm
    assert result.interval_forms == [[1, 3], [4, 5]]


def test_cm_closed_needs_a_closed_labeling():
    with pytest.raises(DomainError):
        cm_closed(Graph.from_edges(3, [(1, 3), (2, 3)]))


# ---------------------------------------------------------------------------
# symbolic powers
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["K3", "P3", "P4"])
def test_symbolic_equals_ordinary_for_closed_graphs(name):
    assert symbolic_equals_ordinary(graph(name), 2)


def test_symbolic_square_of_path(p3):
    assert symbolic_power(p3, 2).equals(binomial_edge_ideal(p3).power(2))


def test_symbolic_membership_beyond_the_ordinary_power(p3):
    ring = PolynomialRing(3)
    f12, f23 = minor(ring, 1, 2), minor(ring, 2, 3)
    assert symbolic_power_membership(f12 * f23, p3, 2)
    assert not symbolic_power_membership(f12, p3, 2)
    with pytest.raises(ValueError):
        symbolic_power_membership(f12, p3, 0)


def test_symbolic_budget(monkeypatch, k3):
    monkeypatch.setattr(settings, "symbolic_max_n", 2)
    with pytest.raises(CapacityError) as err:
        symbolic_equals_ordinary(k3, 2)
    assert err.value.stage == "symbolic_power"


def test_witness_family_shape(net):
    embedding = find_induced(net, PATTERNS["net"])
    g2 = net_witness_family(net, embedding, 2)
    g3 = net_witness_family(net, embedding, 3)
    assert g2 == parse_polynomial(NET_WITNESS, g2.ring)
    assert g2.degree() == 6 and g3.degree() == 8
    assert g3 == g2 * minor(g2.ring, 2, 3)


def test_witness_family_rejects_bad_input(net):
    embedding = find_induced(net, PATTERNS["net"])
    with pytest.raises(DomainError):
        net_witness_family(net, embedding, 1)
    with pytest.raises(DomainError):
        net_witness_family(graph("P6"), embedding, 2)


def test_witness_family_follows_the_embedding():
    # the net on vertices 2..7 of a 7-vertex graph
    edges = [(a + 1, b + 1) for a, b in PATTERNS["net"].edges()]
    G = Graph.from_edges(7, edges)
    embedding = find_induced(G, PATTERNS["net"])
    assert sorted(embedding.values()) == [2, 3, 4, 5, 6, 7]
    g = net_witness_family(G, embedding, 2)
    assert not g.variables_used() & 1  # x1 absent
    assert g.ring.n == 7


@pytest.mark.slow
def test_net_witness_separates_the_powers(net):
    embedding = find_induced(net, PATTERNS["net"])
    g = net_witness_family(net, embedding, 2)
    assert witness_memberships(net, g, 2) == (True, False)
    verify_witness(net, g, 2)


@pytest.mark.slow
def test_net_symbolic_square_differs(net):
    assert not symbolic_equals_ordinary(net, 2)


# ---------------------------------------------------------------------------
# initial ideal of a closed graph
# ---------------------------------------------------------------------------


def test_initial_bipartite_graph(k3):
    H = initial_bipartite_graph(k3)
    assert H.edges == ((1, 2), (1, 3), (2, 3))
    assert H.isolated_vertices() == ["x3", "y1"]
    assert H.edge_ideal().equals(binomial_edge_ideal(k3).initial_ideal())


def test_initial_bipartite_graph_needs_closed_labeling():
    with pytest.raises(DomainError):
        initial_bipartite_graph(Graph.from_edges(3, [(1, 3), (2, 3)]))


@pytest.mark.parametrize("name, expected", [("K3", 1), ("P4", 3), ("P6", 5), ("K5", 1)])
def test_induced_matching_number(name, expected):
    assert induced_matching_number(initial_bipartite_graph(graph(name))) == expected


def test_induced_matching_is_the_longest_induced_path(closed_not_cm):
    assert induced_matching_number(initial_bipartite_graph(closed_not_cm)) == 2


def test_induced_matching_budget(monkeypatch):
    monkeypatch.setattr(settings, "matching_max_edges", 2)
    with pytest.raises(CapacityError):
        induced_matching_number(initial_bipartite_graph(graph("K3")))


# ---------------------------------------------------------------------------
# regular sequences
# ---------------------------------------------------------------------------


def test_complete_graph_sequence():
    ring = PolynomialRing(3)
    seq = complete_graph_regular_sequence(3)
    assert seq == [ring.y(1) - ring.x(2), ring.y(2) - ring.x(3), ring.y(3)]
    with pytest.raises(DomainError):
        complete_graph_regular_sequence(2)


def test_complete_graph_sequence_is_regular_on_the_square(j_k3):
    assert is_regular_sequence(j_k3.power(2), complete_graph_regular_sequence(3))


def test_zero_divisor_breaks_regularity(p3):
    J = binomial_edge_ideal(p3)
    assert not is_regular_sequence(J, [J.ring.x(2)])
    assert is_regular_sequence(J, [J.ring.x(1) - J.ring.y(3)])


def test_clique_splitting_of_path(p3):
    split = clique_splitting(p3)
    ring = PolynomialRing(4)
    assert split.graph.edges() == [(1, 2), (3, 4)]
    assert split.forms == [ring.y(2) - ring.y(3), ring.x(2) - ring.x(3)]
    assert split.vertex_map == (1, 2, 2, 3)
    target = PolynomialRing(3)
    assert split.identify(minor(ring, 3, 4), target) == minor(target, 2, 3)


@pytest.mark.parametrize("k", [1, 2])
def test_splitting_forms_are_regular(p3, k):
    split = clique_splitting(p3)
    assert is_regular_sequence(binomial_edge_ideal(split.graph).power(k), split.forms)


def test_clique_splitting_needs_cm(closed_not_cm):
    with pytest.raises(DomainError):
        clique_splitting(closed_not_cm)


def test_prime_field_witness_ring(net):
    embedding = find_induced(net, PATTERNS["net"])
    g = net_witness_family(net, embedding, 2, PrimeField(32003))
    assert g.ring.field == PrimeField(32003)


# ---------------------------------------------------------------------------
# Cohen-Macaulayness of powers
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, k, expected",
    [
        ("P4", 2, True),
        ("K3", 2, False),
        ("K3", 1, True),
        ("net", 2, False),
        ("net", 1, True),
        ("C4", 1, None),
    ],
)
def test_powers_cm_prediction(name, k, expected):
    assert powers_cm_prediction(graph(name), k) is expected


def test_powers_cm_prediction_closed_not_cm(closed_not_cm):
    assert powers_cm_prediction(closed_not_cm, 1) is False
