from __future__ import annotations

from fractions import Fraction

import pytest

from beilab.errors import DomainError, PolynomialParseError
from beilab.services.polynomial import (
    QQ,
    PolynomialRing,
    PrimeField,
    field_from_name,
    format_polynomial,
    iter_monomials_of_degree,
    minimalize,
    parse_polynomial,
)


def test_variable_layout(ring2):
    assert [ring2.variable_name(i) for i in range(ring2.nvars)] == ["x1", "x2", "y1", "y2"]
    big = ring2.with_elimination()
    assert [big.variable_name(i) for i in range(big.nvars)] == ["t", "x1", "x2", "y1", "y2"]
    assert big.x_index(1) == 1 and big.y_index(2) == 4


def test_lex_order_puts_x_before_y(ring2):
    f = ring2.x(1) * ring2.y(2) - ring2.x(2) * ring2.y(1)
    assert f.lead_monomial() == (1, 0, 0, 1)
    assert format_polynomial(f) == "x1*y2 - x2*y1"
    g = ring2.y(1) ** 3 + ring2.x(2)
    assert g.lead_monomial() == ring2.unit(ring2.x_index(2))


def test_parse_matches_arithmetic(ring2):
    f = parse_polynomial("2*x1^2*y1 - 1/2*y2 + 3", ring2)
    expected = ring2.x(1) ** 2 * ring2.y(1) * 2 - ring2.y(2).scale(Fraction(1, 2)) + 3
    assert f == expected
    assert format_polynomial(f) == "2*x1^2*y1 - 1/2*y2 + 3"
    assert parse_polynomial(" 0 ", ring2).is_zero()


@pytest.mark.parametrize(
    "text, token",
    [
        ("x3*y1", "x3"),
        ("z1 + x1", "z1"),
        ("t*x1", "t"),
        ("x", "x"),
    ],
)
def test_parse_errors(ring2, text, token):
    with pytest.raises(PolynomialParseError) as err:
        parse_polynomial(text, ring2)
    assert err.value.token == token


def test_elimination_variable_parses_only_in_elimination_ring(ring2):
    big = ring2.with_elimination()
    f = parse_polynomial("t*x1 - x1", big)
    assert f.lead_monomial()[0] == 1


def test_prime_field_arithmetic(gf7):
    assert gf7.convert(Fraction(1, 2)) == 4
    assert gf7.convert(-1) == 6
    assert gf7.to_fraction(6) == -1
    assert gf7.inverse(3) == 5
    with pytest.raises(DomainError):
        gf7.convert(Fraction(1, 7))


def test_field_names():
    assert field_from_name("qq") is QQ
    assert field_from_name("0") is QQ
    assert field_from_name("gf7") == PrimeField(7)
    assert field_from_name(32003) == PrimeField(32003)
    with pytest.raises(DomainError):
        field_from_name("9")
    with pytest.raises(DomainError):
        field_from_name("reals")


def test_coefficients_reduce_modulo_p(gf7):
    ring = PolynomialRing(2, gf7)
    f = parse_polynomial("8*x1 - 15*y1", ring)
    assert format_polynomial(f) == "x1 - y1"
    assert (f * 7).is_zero()


def test_exact_division(ring2):
    f = parse_polynomial("x1^2 - y1^2", ring2)
    assert f.divide_exact(ring2.x(1) - ring2.y(1)) == ring2.x(1) + ring2.y(1)
    with pytest.raises(AssertionError):
        f.divide_exact(ring2.x(2))


def test_substitute_and_rename(ring2):
    f = parse_polynomial("x1*y2 - x2*y1", ring2)
    g = f.substitute(ring2.x_index(1), ring2.x(2))
    assert g == parse_polynomial("x2*y2 - x2*y1", ring2)
    swapped = f.rename(ring2, {0: 1, 1: 0, 2: 3, 3: 2})
    assert swapped == -f


def test_change_ring_keeps_terms(ring2, gf7):
    f = parse_polynomial("x1*y2 - 3*x2*y1", ring2)
    big = f.change_ring(ring2.with_elimination())
    assert big.lead_monomial() == (0, 1, 0, 0, 1)
    assert big.change_ring(ring2) == f
    assert format_polynomial(f.change_field(gf7)) == "x1*y2 - 3*x2*y1"
    with pytest.raises(ValueError):
        (big * ring2.with_elimination().t()).change_ring(ring2)


def test_homogeneity_and_degree(ring2):
    assert parse_polynomial("x1*y2 - x2*y1", ring2).is_homogeneous()
    assert not parse_polynomial("x1 - 1", ring2).is_homogeneous()
    assert ring2.zero().degree() == -1


def test_minimalize_drops_multiples():
    assert sorted(minimalize([(1, 0), (2, 0), (1, 1), (0, 3)])) == [(0, 3), (1, 0)]


def test_monomials_of_degree_in_descending_lex():
    out = list(iter_monomials_of_degree(3, 2))
    assert len(out) == 6
    assert out == sorted(out, reverse=True)
