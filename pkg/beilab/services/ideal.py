"""
Ideals of S = K[x_1..x_n, y_1..y_n] with a lazily computed, cached
reduced lex Groebner basis.

Intersections use the elimination variable t: I cap J is the t-free part
of t*I + (1-t)*J. Quotients by a polynomial divide the generators of
I cap (f) by f.
"""
from __future__ import annotations

import json
import logging
import threading
from collections import Counter
from functools import reduce
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence

from beilab.errors import PolynomialParseError
from beilab.services.groebner import Reducer, buchberger
from beilab.services.polynomial import (
    Field,
    Monomial,
    Polynomial,
    PolynomialRing,
    format_polynomial,
    minimalize,
    mono_degree,
    mono_lcm,
    parse_polynomial,
)

logger = logging.getLogger(__name__)


class Ideal:
    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = ()):
        if ring.elimination:
            raise ValueError("ideals live in the plain ring; the elimination slot is internal")
        gens = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.ring = ring
        self.generators: tuple = tuple(gens)
        self._gb: Optional[List[Polynomial]] = None
        self._reducer: Optional[Reducer] = None
        self._lock = threading.Lock()

    @classmethod
    def from_monomials(cls, ring: PolynomialRing, monomials: Iterable[Monomial]) -> "Ideal":
        return cls(ring, [ring.monomial(m) for m in minimalize(monomials)])

    @classmethod
    def unit(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [ring.constant(1)])

    # -- Groebner data ----------------------------------------------------

    def groebner_basis(self) -> List[Polynomial]:
        with self._lock:
            if self._gb is None:
                if self.is_monomial():
                    mons = minimalize(g.lead_monomial() for g in self.generators)
                    self._gb = [self.ring.monomial(m) for m in mons]
                else:
                    self._gb = buchberger(self.generators)
            return self._gb

    def reducer(self) -> Reducer:
        basis = self.groebner_basis()
        with self._lock:
            if self._reducer is None:
                self._reducer = Reducer(self.ring, basis)
            return self._reducer

    def leading_monomials(self) -> List[Monomial]:
        return [g.lead_monomial() for g in self.groebner_basis()]

    def initial_ideal(self) -> "Ideal":
        return Ideal.from_monomials(self.ring, self.leading_monomials())

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.reducer().reduce(f)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "Ideal") -> bool:
        """Equality by comparing reduced Groebner bases."""
        if self.ring != other.ring:
            return False
        mine, theirs = self.groebner_basis(), other.groebner_basis()
        return len(mine) == len(theirs) and all(a.terms == b.terms for a, b in zip(mine, theirs))

    # -- shape ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.degree() == 0 for g in self.groebner_basis())

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Ideal(n={self.ring.n}, gens=[{', '.join(map(str, self.generators))}])"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])

    def power(self, k: int) -> "Ideal":
        """Generated by all k-fold products of the generators."""
        if k < 1:
            raise ValueError("ideal powers start at k = 1")
        if k == 1:
            return self
        if self.is_monomial():
            mons = [g.lead_monomial() for g in self.generators]
            products = []
            for combo in combinations_with_replacement(mons, k):
                products.append(tuple(map(sum, zip(*combo))))
            return Ideal.from_monomials(self.ring, products)
        products = [reduce(lambda a, b: a * b, combo) for combo in combinations_with_replacement(self.generators, k)]
        return Ideal(self.ring, products)

    def intersection(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise ValueError("ideals live in different rings")
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring)
        if self.is_monomial() and other.is_monomial():
            return Ideal.from_monomials(
                self.ring,
                monomial_intersection(
                    [g.lead_monomial() for g in self.generators],
                    [g.lead_monomial() for g in other.generators],
                ),
            )
        big = self.ring.with_elimination()
        t = big.t()
        one_minus_t = big.constant(1) - t
        lifted = [t * g.change_ring(big) for g in self.generators]
        lifted += [one_minus_t * g.change_ring(big) for g in other.generators]
        gb = buchberger(lifted)
        kept = [g.change_ring(self.ring) for g in gb if g.lead_monomial()[0] == 0]
        logger.debug("intersection kept %d of %d elimination basis elements", len(kept), len(gb))
        return Ideal(self.ring, kept)

    def quotient(self, f: Polynomial) -> "Ideal":
        """(I : f) = {g : g f in I}."""
        if f.is_zero():
            raise ValueError("quotient by the zero polynomial")
        if self.is_zero():
            return Ideal(self.ring)
        meet = self.intersection(Ideal(self.ring, [f]))
        return Ideal(self.ring, [g.divide_exact(f) for g in meet.generators])

    def quotient_ideal(self, other: "Ideal") -> "Ideal":
        """(I : J) as the intersection of (I : g) over the generators g of J."""
        if other.is_zero():
            return Ideal.unit(self.ring)
        parts = [self.quotient(g) for g in other.generators]
        return reduce(lambda a, b: a.intersection(b), parts)

    def change_field(self, field: Field) -> "Ideal":
        ring = self.ring.with_field(field)
        return Ideal(ring, [g.change_field(field) for g in self.generators])

    # -- Hilbert data -----------------------------------------------------

    def hilbert_numerator(self) -> List[int]:
        """Numerator of the Hilbert series of S/in(I) over (1-t)^(2n)."""
        return hilbert_numerator(self.leading_monomials(), self.ring.nvars)

    def krull_dimension(self) -> int:
        return krull_dimension_from_numerator(self.hilbert_numerator(), self.ring.nvars)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"n": self.ring.n, "generators": [format_polynomial(g) for g in self.generators]})

    @classmethod
    def from_json(cls, text: str, field: Optional[Field] = None) -> "Ideal":
        try:
            data = json.loads(text)
            n = int(data["n"])
            gens = list(data["generators"])
        except (ValueError, KeyError, TypeError) as e:
            raise PolynomialParseError(f"malformed ideal JSON ({e})") from e
        ring = PolynomialRing(n) if field is None else PolynomialRing(n, field)
        return cls(ring, [parse_polynomial(g, ring) for g in gens])


# ---------------------------------------------------------------------------
# Monomial ideals
# ---------------------------------------------------------------------------


def monomial_intersection(a: Sequence[Monomial], b: Sequence[Monomial]) -> List[Monomial]:
    return minimalize(mono_lcm(u, v) for u in a for v in b)


def _poly_mul(p: List[int], q: List[int]) -> List[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_add(p: List[int], q: List[int]) -> List[int]:
    out = [0] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b
    return out


def _trim(p: List[int]) -> List[int]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def hilbert_numerator(generators: Sequence[Monomial], nvars: int) -> List[int]:
    """
    K(S/M; t) with HS(S/M) = K(t) / (1-t)^nvars, by pivoting on the
    variable that divides the most generators:
        K(M) = K(M + (x)) + t * K(M : x).
    """
    memo: Dict[tuple, List[int]] = {}

    def numerator(gens: tuple) -> List[int]:
        if gens in memo:
            return memo[gens]
        if not gens:
            result = [1]
        elif any(mono_degree(g) == 0 for g in gens):
            result = [0]
        else:
            counts = Counter(i for g in gens for i, e in enumerate(g) if e)
            if all(c == 1 for c in counts.values()):
                result = [1]
                for g in gens:
                    factor = [0] * (mono_degree(g) + 1)
                    factor[0], factor[-1] = 1, -1
                    result = _poly_mul(result, factor)
            else:
                pivot = min(counts, key=lambda i: (-counts[i], i))
                unit = tuple(1 if i == pivot else 0 for i in range(nvars))
                added = tuple(minimalize([g for g in gens if not g[pivot]] + [unit]))
                divided = tuple(
                    minimalize(tuple(e - 1 if i == pivot and e else e for i, e in enumerate(g)) for g in gens)
                )
                result = _poly_add(numerator(added), [0] + numerator(divided))
        result = _trim(result)
        memo[gens] = result
        return result

    return numerator(tuple(minimalize(generators)))


def krull_dimension_from_numerator(numerator: List[int], nvars: int) -> int:
    """nvars minus the multiplicity of t = 1 as a root of the numerator; -1 for the unit ideal."""
    p = _trim(list(numerator))
    if p == [0]:
        return -1
    order = 0
    while sum(p) == 0:
        # exact division by (1 - t): prefix sums
        q, acc = [], 0
        for a in p[:-1]:
            acc += a
            q.append(acc)
        p = _trim(q)
        order += 1
    return nvars - order
