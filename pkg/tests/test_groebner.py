from __future__ import annotations

import numpy as np
import pytest
import sympy

from beilab.errors import CapacityError
from beilab.services.bei import binomial_edge_ideal
from beilab.services.catalog import connected_graphs
from beilab.services.graph import Graph, is_closed_labeling, recognize_closed
from beilab.services.groebner import Reducer, buchberger, interreduce, is_groebner_basis, normal_form
from beilab.services.polynomial import PolynomialRing, PrimeField, format_polynomial, parse_polynomial

from .conftest import graph

BAD_P3 = Graph.from_edges(3, [(1, 3), (2, 3)])


def _sympy_gens(ring: PolynomialRing):
    return sympy.symbols([ring.variable_name(i) for i in range(ring.nvars)])


def _to_sympy(f, gens):
    return sympy.expand(sympy.sympify(format_polynomial(f).replace("^", "**"), locals={str(g): g for g in gens}))


def test_lead_monomial_agrees_with_sympy_lex():
    ring = PolynomialRing(3)
    gens = _sympy_gens(ring)
    for text in ("y1^5 + x3*y2", "x2*y3 - x3*y2 + x1", "3*y1*y2*y3 - y3^4 + x3^2", "x1*y1 + x1^2"):
        f = parse_polynomial(text, ring)
        expected = sympy.Poly(_to_sympy(f, gens), *gens).monoms(order="lex")[0]
        assert f.lead_monomial() == tuple(expected), text


def test_closed_graph_generators_already_form_a_basis():
    J = binomial_edge_ideal(graph("K3"))
    assert is_groebner_basis(list(J.generators))
    assert len(J.groebner_basis()) == 3


def test_badly_labelled_path_needs_a_cubic():
    J = binomial_edge_ideal(BAD_P3)
    assert not is_groebner_basis(list(J.generators))
    gb = J.groebner_basis()
    assert sorted(g.degree() for g in gb) == [2, 2, 3]
    assert parse_polynomial("x1*x3*y2 - x2*x3*y1", J.ring) in gb
    assert is_groebner_basis(gb)


@pytest.mark.parametrize("name", ["C4", "claw", "P4"])
def test_reduced_basis_matches_sympy(name):
    G = graph(name) if name != "P4" else Graph.from_edges(4, [(1, 3), (3, 2), (2, 4)])
    J = binomial_edge_ideal(G)
    gens = _sympy_gens(J.ring)
    theirs = sympy.groebner([_to_sympy(g, gens) for g in J.generators], *gens, order="lex")
    ours = {_to_sympy(g, gens) for g in J.groebner_basis()}
    assert ours == {sympy.expand(e) for e in theirs.exprs}


def test_basis_over_prime_field():
    J = binomial_edge_ideal(BAD_P3, PrimeField(7))
    gb = J.groebner_basis()
    assert all(g.lead_coefficient() == 1 for g in gb)
    assert sorted(g.degree() for g in gb) == [2, 2, 3]


def test_step_and_degree_limits():
    gens = list(binomial_edge_ideal(BAD_P3).generators)
    with pytest.raises(CapacityError) as err:
        buchberger(gens, max_steps=0)
    assert err.value.stage == "groebner"
    with pytest.raises(CapacityError):
        buchberger(gens, max_degree=2)


def test_normal_form_and_reducer(ring2):
    f = parse_polynomial("x1*y2 - x2*y1", ring2)
    assert normal_form(f * ring2.x(1), [f]).is_zero()
    reducer = Reducer(ring2, [f])
    assert not reducer.is_standard((1, 0, 0, 1))
    assert reducer.is_standard((0, 1, 1, 0))
    assert reducer.reduce(ring2.x(1) * ring2.y(2)) == ring2.x(2) * ring2.y(1)


def test_interreduce_is_monic_and_minimal(ring2):
    f = parse_polynomial("2*x1 - 2*y1", ring2)
    g = parse_polynomial("x1*y2", ring2)
    out = interreduce([f, g])
    assert [format_polynomial(h) for h in out] == ["x1 - y1"]


# ---------------------------------------------------------------------------
# invariants over small graphs
# ---------------------------------------------------------------------------


def _closed_labelled(n_max: int):
    for n in range(2, n_max + 1):
        for G in connected_graphs(n):
            labeling = recognize_closed(G)
            if labeling is not None:
                yield G.relabel(labeling)


def test_closed_labelled_generators_are_the_reduced_basis():
    for H in _closed_labelled(5):
        assert is_closed_labeling(H)
        gens = list(binomial_edge_ideal(H).generators)
        assert set(buchberger(gens)) == set(gens), str(H)


def test_leading_terms_do_not_depend_on_the_field():
    corpus = list(connected_graphs(4)) + [BAD_P3, Graph.from_edges(4, [(1, 3), (3, 2), (2, 4)]), graph("claw")]
    for G in corpus:
        over_qq = binomial_edge_ideal(G).leading_monomials()
        over_p = binomial_edge_ideal(G, PrimeField(32003)).leading_monomials()
        assert sorted(over_qq) == sorted(over_p), str(G)


@pytest.mark.parametrize("G", [BAD_P3, graph("C4"), graph("claw")], ids=["bad_p3", "c4", "claw"])
def test_normal_form_decides_membership(G):
    J = binomial_edge_ideal(G)
    ring = J.ring
    basis = J.groebner_basis()
    rng = np.random.default_rng(11)
    for _ in range(5):
        f = ring.zero()
        for g in J.generators:
            exps = tuple(int(e) for e in rng.integers(0, 2, size=ring.nvars))
            f = f + g * ring.monomial(exps, int(rng.integers(-5, 6)))
        assert normal_form(f, basis).is_zero()
        assert J.contains(f)
    for idx in range(ring.nvars):
        assert not normal_form(ring.variable(idx) * ring.variable(idx), basis).is_zero()
    for g in J.generators:
        assert not J.contains(g + ring.x(1))
