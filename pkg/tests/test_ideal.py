from __future__ import annotations

import json

import pytest

from beilab.errors import PolynomialParseError
from beilab.services.bei import binomial_edge_ideal, minor
from beilab.services.graph import Graph
from beilab.services.ideal import Ideal, hilbert_numerator, krull_dimension_from_numerator
from beilab.services.polynomial import PolynomialRing, PrimeField, parse_polynomial

from .conftest import graph


def _ideal(ring, *texts):
    return Ideal(ring, [parse_polynomial(t, ring) for t in texts])


def test_generators_are_deduplicated(ring2):
    I = _ideal(ring2, "x1", "x1", "0", "y2")
    assert len(I) == 2


def test_rejects_foreign_generators(ring2):
    with pytest.raises(ValueError):
        Ideal(ring2, [PolynomialRing(3).x(1)])


def test_membership_and_equality(j_k3):
    ring = j_k3.ring
    f = minor(ring, 1, 2) * ring.x(3) + minor(ring, 2, 3) * ring.y(1)
    assert j_k3.contains(f)
    assert not j_k3.contains(ring.x(1) * ring.y(1))
    shuffled = Ideal(ring, list(reversed(j_k3.generators)))
    assert shuffled.equals(j_k3)
    assert shuffled.is_subset(j_k3) and j_k3.is_subset(shuffled)


def test_monomial_intersection(ring2):
    I = _ideal(ring2, "x1*x2", "y1")
    J = _ideal(ring2, "x1^2", "y2")
    meet = I.intersection(J)
    assert meet.is_monomial()
    assert meet.equals(_ideal(ring2, "x1^2*x2", "x1*x2*y2", "x1^2*y1", "y1*y2"))


def test_intersection_by_elimination(ring2):
    I = _ideal(ring2, "x1 - y1")
    J = _ideal(ring2, "x1")
    assert I.intersection(J).equals(_ideal(ring2, "x1^2 - x1*y1"))
    assert I.intersection(Ideal(ring2)).is_zero()


def test_intersection_of_closed_graph_primes():
    # J_{P3} is the intersection of its two minimal primes
    ring = PolynomialRing(3)
    prime_a = _ideal(ring, "x1*y2 - x2*y1", "x1*y3 - x3*y1", "x2*y3 - x3*y2")
    prime_b = _ideal(ring, "x2", "y2")
    assert prime_a.intersection(prime_b).equals(binomial_edge_ideal(graph("P3")))


def test_quotient_by_a_polynomial():
    J = binomial_edge_ideal(Graph.from_edges(3, [(1, 3), (2, 3)]))
    f12 = minor(J.ring, 1, 2)
    assert not J.contains(f12)
    colon = J.quotient(J.ring.x(3))
    assert colon.contains(f12)
    assert J.is_subset(colon)
    with pytest.raises(ValueError):
        J.quotient(J.ring.zero())


def test_quotient_by_an_ideal(ring2):
    I = _ideal(ring2, "x1*y1", "x1*y2")
    assert I.quotient_ideal(_ideal(ring2, "y1", "y2")).equals(_ideal(ring2, "x1"))
    assert I.quotient_ideal(Ideal(ring2)).is_unit()


def test_powers(j_k3):
    square = j_k3.power(2)
    assert len(square) == 6
    assert all(g.degree() == 4 for g in square.generators)
    assert j_k3.power(1) is j_k3
    with pytest.raises(ValueError):
        j_k3.power(0)


def test_monomial_powers_stay_minimal(ring2):
    I = _ideal(ring2, "x1", "x1*y1", "y2")
    assert I.power(2).equals(_ideal(ring2, "x1^2", "x1*y2", "y2^2"))


def test_initial_ideal_of_closed_graph(j_k3):
    initial = j_k3.initial_ideal()
    assert initial.is_monomial()
    assert initial.equals(_ideal(j_k3.ring, "x1*y2", "x1*y3", "x2*y3"))


def test_hilbert_numerator_matches_betti_numbers(j_k3):
    # 1 - 3t^2 + 2t^3 from the resolution of S/J_{K3}
    assert j_k3.hilbert_numerator() == [1, 0, -3, 2]
    assert j_k3.krull_dimension() == 4


def test_hilbert_numerator_of_coordinate_ideals():
    assert hilbert_numerator([(1, 0, 0)], 3) == [1, -1]
    assert hilbert_numerator([(1, 0, 0), (0, 1, 0)], 3) == [1, -2, 1]
    assert hilbert_numerator([], 3) == [1]
    assert krull_dimension_from_numerator([1, -2, 1], 3) == 1
    assert krull_dimension_from_numerator([0], 3) == -1


def test_dimension_of_path_ideal():
    assert binomial_edge_ideal(graph("P3")).krull_dimension() == 4
    assert binomial_edge_ideal(graph("E2")).krull_dimension() == 4


def test_unit_ideal(ring2):
    I = _ideal(ring2, "x1", "x1 - 1")
    assert I.is_unit()
    assert I.krull_dimension() == -1
    assert Ideal.unit(ring2).is_unit()


def test_change_field(j_k3):
    gf = PrimeField(32003)
    moved = j_k3.change_field(gf)
    assert moved.ring.field == gf
    assert len(moved.groebner_basis()) == 3


def test_json_form(j_k3):
    data = json.loads(j_k3.to_json())
    assert data["n"] == 3
    assert "x1*y2 - x2*y1" in data["generators"]
    assert Ideal.from_json(j_k3.to_json()).equals(j_k3)
    with pytest.raises(PolynomialParseError):
        Ideal.from_json('{"generators": []}')
    with pytest.raises(PolynomialParseError):
        Ideal.from_json('{"n": 2, "generators": ["x1*q2"]}')
