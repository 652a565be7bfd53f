"""
Formula-free invariants of S/I: graded Betti numbers from Koszul homology
over the standard monomials of I, and a randomized depth estimate from
generic linear forms.

The Koszul complex of S/I splits by any positive grading for which I is
homogeneous. Monomial ideals are done in the fine Z^(2n) grading, where
Betti numbers live on the lcm lattice of the generators. Other ideals use
the grading deg x_v = (e_v, 1), deg y_v = (e_v, 0) when it applies (it
does for binomial edge ideals, their powers and primes) and the standard
grading otherwise; only multidegrees where the initial ideal has a
non-zero Betti number are computed, and every computed value is checked
against that upper bound.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from beilab.errors import CapacityError, DomainError, VerificationError
from beilab.schema import BettiTable
from beilab.services.groebner import Reducer
from beilab.services.ideal import Ideal
from beilab.services.linalg import rank
from beilab.services.polynomial import (
    QQ,
    Field,
    Monomial,
    Polynomial,
    PolynomialRing,
    PrimeField,
    iter_monomials_of_degree,
    minimalize,
    mono_lcm,
)
from beilab.settings import settings

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]

# ---------------------------------------------------------------------------
# Gradings
# ---------------------------------------------------------------------------


class Grading:
    name = "standard"

    def __init__(self, ring: PolynomialRing):
        self.ring = ring

    def weight(self, mono: Monomial) -> Weight:
        return (sum(mono),)

    def total(self, weight: Weight) -> int:
        return weight[0]

    def monomials(self, weight: Weight) -> Iterator[Monomial]:
        return iter_monomials_of_degree(self.ring.nvars, weight[0])

    def is_homogeneous(self, f: Polynomial) -> bool:
        return len({self.weight(m) for m in f.terms}) <= 1


class FineGrading(Grading):
    name = "fine"

    def weight(self, mono: Monomial) -> Weight:
        return mono

    def total(self, weight: Weight) -> int:
        return sum(weight)

    def monomials(self, weight: Weight) -> Iterator[Monomial]:
        yield weight


class VertexGrading(Grading):
    """deg x_v = (e_v, 1), deg y_v = (e_v, 0)."""

    name = "vertex"

    def weight(self, mono: Monomial) -> Weight:
        n = self.ring.n
        xs, ys = mono[:n], mono[n:]
        return tuple(a + b for a, b in zip(xs, ys)) + (sum(xs),)

    def total(self, weight: Weight) -> int:
        return sum(weight[:-1])

    def monomials(self, weight: Weight) -> Iterator[Monomial]:
        n = self.ring.n
        per_vertex, x_total = weight[:-1], weight[-1]
        suffix = [0] * (n + 1)
        for v in range(n - 1, -1, -1):
            suffix[v] = suffix[v + 1] + per_vertex[v]

        def split(v: int, left: int, xs: List[int]) -> Iterator[Monomial]:
            if v == n:
                if left == 0:
                    yield tuple(xs) + tuple(per_vertex[u] - xs[u] for u in range(n))
                return
            for a in range(min(per_vertex[v], left), -1, -1):
                if left - a > suffix[v + 1]:
                    break
                xs.append(a)
                yield from split(v + 1, left - a, xs)
                xs.pop()

        return split(0, x_total, [])


def choose_grading(ring: PolynomialRing, basis: Sequence[Polynomial]) -> Grading:
    if all(g.is_monomial() for g in basis):
        return FineGrading(ring)
    vertex = VertexGrading(ring)
    if all(vertex.is_homogeneous(g) for g in basis):
        return vertex
    standard = Grading(ring)
    if all(standard.is_homogeneous(g) for g in basis):
        return standard
    raise DomainError("Betti numbers need a homogeneous ideal")


# ---------------------------------------------------------------------------
# Koszul strata
# ---------------------------------------------------------------------------


class KoszulStratum:
    """
    The Koszul complex of S/I in one multidegree: basis e_T (x) m with
    |T| = i, m standard and x_T * m of the given weight.
    """

    def __init__(self, reducer: Reducer, field: Field, grading: Grading, weight: Weight):
        self.reducer = reducer
        self.field = field
        self.grading = grading
        self.weight = weight
        self.monomials = list(grading.monomials(weight))
        self._bases: Dict[int, Tuple[List[Tuple[Tuple[int, ...], Monomial]], Dict]] = {}
        self._rows: Dict[int, List[Dict[int, object]]] = {}
        self._ranks: Dict[int, int] = {}
        self._nf: Dict[Monomial, Dict[Monomial, object]] = {}

    def basis(self, i: int):
        if i not in self._bases:
            elems = []
            for mu in self.monomials:
                support = [v for v, e in enumerate(mu) if e]
                for T in combinations(support, i):
                    m = list(mu)
                    for v in T:
                        m[v] -= 1
                    m = tuple(m)
                    if self.reducer.is_standard(m):
                        elems.append((T, m))
            if len(elems) > settings.oracle_max_basis:
                raise CapacityError(
                    "oracle", f"Koszul stratum of size {len(elems)} exceeds oracle_max_basis={settings.oracle_max_basis}"
                )
            self._bases[i] = (elems, {e: idx for idx, e in enumerate(elems)})
        return self._bases[i]

    def _normal_form(self, mono: Monomial) -> Dict[Monomial, object]:
        if mono not in self._nf:
            if self.reducer.is_standard(mono):
                self._nf[mono] = {mono: self.field.convert(1)}
            else:
                self._nf[mono] = self.reducer.reduce_terms({mono: self.field.convert(1)})
        return self._nf[mono]

    def rows(self, i: int) -> List[Dict[int, object]]:
        """Images d(e_T (x) m) in the basis of degree i - 1."""
        if i not in self._rows:
            elems, _ = self.basis(i)
            _, target = self.basis(i - 1)
            norm = self.field.normalize
            out = []
            for T, m in elems:
                row: Dict[int, object] = {}
                for pos, v in enumerate(T):
                    sign = -1 if pos % 2 else 1
                    rest = T[:pos] + T[pos + 1:]
                    bumped = m[:v] + (m[v] + 1,) + m[v + 1:]
                    for mono, c in self._normal_form(bumped).items():
                        idx = target[(rest, mono)]
                        val = norm(row.get(idx, 0) + sign * c)
                        if val:
                            row[idx] = val
                        else:
                            row.pop(idx, None)
                out.append(row)
            self._rows[i] = out
        return self._rows[i]

    def rank(self, i: int) -> int:
        if i <= 0:
            return 0
        if i not in self._ranks:
            if not self.basis(i)[0] or not self.basis(i - 1)[0]:
                self._ranks[i] = 0
            else:
                self._ranks[i] = rank(self.rows(i), self.field)
        return self._ranks[i]

    def homology(self, i: int) -> int:
        return len(self.basis(i)[0]) - self.rank(i) - self.rank(i + 1)

    def check_composition(self, i: int) -> None:
        """d_{i-1} o d_i = 0."""
        if i < 2 or not self.basis(i)[0] or not self.basis(i - 2)[0]:
            return
        lower = self.rows(i - 1)
        norm = self.field.normalize
        for row in self.rows(i):
            acc: Dict[int, object] = {}
            for idx, c in row.items():
                for tgt, c2 in lower[idx].items():
                    acc[tgt] = norm(acc.get(tgt, 0) + c * c2)
            if any(acc.values()):
                raise VerificationError(f"Koszul differential does not square to zero at weight {self.weight}, i={i}")


# ---------------------------------------------------------------------------
# Monomial ideals in the fine grading
# ---------------------------------------------------------------------------


def lcm_lattice(generators: Sequence[Monomial], bound: int) -> Tuple[List[Monomial], bool]:
    """lcms of non-empty subsets of the generators with degree <= bound; flag set when some exceeded it."""
    clipped = False
    seen = set()
    frontier = []
    for g in generators:
        if sum(g) > bound:
            clipped = True
        elif g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        fresh = []
        for f in frontier:
            for g in generators:
                m = mono_lcm(f, g)
                if m in seen:
                    continue
                if sum(m) > bound:
                    clipped = True
                    continue
                seen.add(m)
                fresh.append(m)
                if len(seen) > settings.oracle_max_lattice:
                    raise CapacityError("oracle", f"lcm lattice exceeds oracle_max_lattice={settings.oracle_max_lattice}")
        frontier = fresh
    return sorted(seen, key=lambda m: (sum(m), m)), clipped


def _fine_betti(
    generators: Sequence[Monomial], ring: PolynomialRing, field: Field, bound: int
) -> Tuple[Dict[Tuple[int, Monomial], int], bool]:
    monomial_ring = ring.with_field(field)
    reducer = Reducer(monomial_ring, [monomial_ring.monomial(g) for g in generators])
    grading = FineGrading(monomial_ring)
    lattice, clipped = lcm_lattice(generators, bound)
    out: Dict[Tuple[int, Monomial], int] = {}
    zero = monomial_ring.one_monomial()
    if not any(sum(g) == 0 for g in generators):
        out[(0, zero)] = 1
    for alpha in lattice:
        stratum = KoszulStratum(reducer, field, grading, alpha)
        width = sum(1 for e in alpha if e)
        for i in range(1, width + 1):
            h = stratum.homology(i)
            if h:
                out[(i, alpha)] = h
            if settings.oracle_check_dd:
                stratum.check_composition(i)
    return out, clipped


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


def _default_field(field: Optional[Field]) -> Field:
    return field if field is not None else PrimeField(settings.default_prime)


def default_degree_bound(initial_generators: Sequence[Monomial]) -> int:
    """1 + degree of the lcm of all minimal generators of in(I)."""
    total = None
    for g in initial_generators:
        total = g if total is None else mono_lcm(total, g)
    return 1 + (sum(total) if total is not None else 0)


def betti_table(
    I: Ideal,
    degree_bound: Optional[int] = None,
    field: Optional[Field] = None,
    seed: Optional[int] = None,
    parity_shortcut: Optional[bool] = None,
) -> BettiTable:
    """
    Graded Betti numbers of S/I. Strata are bounded by the fine table of
    in(I); with `parity_shortcut` (default from settings) a stratum whose
    bounds sit in indices of one parity is copied without computing homology.
    """
    field = _default_field(field)
    shortcut = settings.oracle_parity_shortcut if parity_shortcut is None else parity_shortcut
    J = I if I.ring.field == field else I.change_field(field)
    basis = J.groebner_basis()
    ring = J.ring
    initial = minimalize(g.lead_monomial() for g in basis)
    bound = default_degree_bound(initial) if degree_bound is None else degree_bound
    meta = dict(field=field.name, seed=seed, degree_bound=bound)

    fine, clipped = _fine_betti(initial, ring, field, bound)
    if J.is_monomial():
        entries: Dict[int, Dict[int, int]] = defaultdict(dict)
        for (i, alpha), b in fine.items():
            entries[i][sum(alpha)] = entries[i].get(sum(alpha), 0) + b
        return BettiTable.build(entries, ring.nvars, truncated=clipped, grading="fine", **meta)

    grading = choose_grading(ring, basis)
    bounds: Dict[Weight, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for (i, alpha), b in fine.items():
        bounds[grading.weight(alpha)][i] += b

    reducer = J.reducer()
    entries = defaultdict(dict)
    computed = 0
    for weight in sorted(bounds, key=lambda w: (grading.total(w), w)):
        upper = {i: b for i, b in bounds[weight].items() if b}
        if shortcut and len({i % 2 for i in upper}) == 1:
            # no cancellation possible between indices of equal parity
            values = dict(upper)
        else:
            stratum = KoszulStratum(reducer, field, grading, weight)
            values = {}
            for i in sorted(upper):
                h = stratum.homology(i)
                if h > upper[i]:
                    raise VerificationError(
                        f"beta_{i} at weight {weight} is {h}, above the initial-ideal bound {upper[i]}"
                    )
                if settings.oracle_check_dd:
                    stratum.check_composition(i)
                    stratum.check_composition(i + 1)
                values[i] = h
            euler = sum((-1) ** i * v for i, v in values.items())
            if euler != sum((-1) ** i * b for i, b in upper.items()):
                raise VerificationError(f"Euler characteristic mismatch at weight {weight}")
            computed += 1
        total = grading.total(weight)
        for i, v in values.items():
            if v:
                entries[i][total] = entries[i].get(total, 0) + v
    logger.debug("Betti table: %d weights, %d computed strata (%s grading)", len(bounds), computed, grading.name)
    return BettiTable.build(entries, ring.nvars, truncated=clipped, grading=grading.name, **meta)


def betti_table_checked(I: Ideal, primes: Optional[Sequence[int]] = None, **kwargs) -> BettiTable:
    """Tables over two primes; on disagreement the rational table is returned."""
    primes = list(primes or (settings.default_prime, settings.second_prime))
    tables = [betti_table(I, field=PrimeField(p), **kwargs) for p in primes]
    if all(t.same_numbers(tables[0]) for t in tables[1:]):
        return tables[0]
    logger.warning("Betti tables differ between primes %s; recomputing over QQ", primes)
    return betti_table(I, field=QQ, **kwargs)


# ---------------------------------------------------------------------------
# Second witnesses
# ---------------------------------------------------------------------------


def depth_probe_generic_forms(
    I: Ideal,
    trials: Optional[int] = None,
    field: Optional[Field] = None,
    seed: Optional[int] = None,
) -> int:
    """
    Longest run of random linear forms found to be a regular sequence on S/I,
    maximized over the trials. Each accepted form is used to eliminate a variable.
    """
    trials = settings.probe_trials if trials is None else trials
    if trials < 2:
        raise DomainError("the generic-forms depth needs at least two trials")
    field = _default_field(field)
    if not isinstance(field, PrimeField):
        field = PrimeField(settings.default_prime)
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    start = I if I.ring.field == field else I.change_field(field)
    ring = start.ring
    if start.is_unit():
        raise DomainError("S/I is the zero ring")
    best = 0
    for trial in range(trials):
        current = start
        remaining = list(range(ring.nvars))
        found = 0
        while remaining:
            coeffs = [int(c) for c in rng.integers(1, field.p, size=len(remaining))]
            ell = ring.zero()
            for v, c in zip(remaining, coeffs):
                ell = ell + ring.variable(v).scale(c)
            if not current.quotient(ell).equals(current):
                break
            found += 1
            pivot, rest = remaining[0], remaining[1:]
            inv = field.inverse(coeffs[0])
            replacement = ring.zero()
            for v, c in zip(rest, coeffs[1:]):
                replacement = replacement + ring.variable(v).scale(-c * inv)
            current = Ideal(ring, [g.substitute(pivot, replacement) for g in current.groebner_basis()])
            remaining = rest
        logger.debug("generic-forms trial %d found %d regular forms", trial, found)
        best = max(best, found)
    return best


def hilbert_consistency(I: Ideal, table: BettiTable) -> bool:
    """sum (-1)^i beta_{i,j} t^j equals the Hilbert numerator of S/in(I)."""
    numerator = list(I.hilbert_numerator())
    while len(numerator) > 1 and numerator[-1] == 0:
        numerator.pop()
    return numerator == table.numerator()
