"""
Reduced lexicographic Groebner bases.

Buchberger's algorithm with the Gebauer-Moeller pair update. Pairs and
input generators are consumed in order of (degree of lcm, lcm, indices),
so for homogeneous input the basis is built degree by degree and the
output is deterministic for a fixed generator order.
"""
from __future__ import annotations

import heapq
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from beilab.errors import CapacityError
from beilab.services.polynomial import (
    Coefficient,
    Monomial,
    Polynomial,
    PolynomialRing,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_support,
)
from beilab.settings import settings

logger = logging.getLogger(__name__)


def _neg(m: Monomial) -> Monomial:
    return tuple(-e for e in m)


class Reducer:
    """Full reduction (normal form) against a fixed list of polynomials."""

    def __init__(self, ring: PolynomialRing, basis: Sequence[Polynomial]):
        self.ring = ring
        self.entries: List[Tuple[Monomial, int, List[Tuple[Monomial, Coefficient]]]] = []
        for g in basis:
            if g.is_zero():
                continue
            g = g.monic()
            lm = g.lead_monomial()
            tail = [(m, c) for m, c in g.terms.items() if m != lm]
            self.entries.append((lm, mono_support(lm), tail))

    def divisor(self, m: Monomial):
        sup = mono_support(m)
        for lm, lsup, tail in self.entries:
            if not lsup & ~sup and mono_divides(lm, m):
                return lm, tail
        return None

    def is_standard(self, m: Monomial) -> bool:
        return self.divisor(m) is None

    def reduce_terms(self, terms: Dict[Monomial, Coefficient]) -> Dict[Monomial, Coefficient]:
        norm = self.ring.field.normalize
        work = dict(terms)
        heap = [_neg(m) for m in work]
        heapq.heapify(heap)
        remainder: Dict[Monomial, Coefficient] = {}
        while heap:
            m = _neg(heapq.heappop(heap))
            c = work.pop(m, None)
            if c is None:
                continue
            hit = self.divisor(m)
            if hit is None:
                remainder[m] = c
                continue
            lm, tail = hit
            q = mono_div(m, lm)
            for tm, tc in tail:
                t = mono_mul(tm, q)
                old = work.get(t)
                if old is None:
                    v = norm(-c * tc)
                    if v:
                        work[t] = v
                        heapq.heappush(heap, _neg(t))
                else:
                    v = norm(old - c * tc)
                    if v:
                        work[t] = v
                    else:
                        del work[t]
        return remainder

    def reduce(self, f: Polynomial) -> Polynomial:
        return Polynomial(f.ring, self.reduce_terms(f.terms))


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    return Reducer(f.ring, basis).reduce(f)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = mono_lcm(lf, lg)
    field = f.ring.field
    a = f.mul_term(mono_div(lcm, lf), field.inverse(f.lead_coefficient()))
    b = g.mul_term(mono_div(lcm, lg), field.inverse(g.lead_coefficient()))
    return a - b


def interreduce(basis: Sequence[Polynomial]) -> List[Polynomial]:
    """Reduced, monic form of a Groebner basis, sorted by descending leading monomial."""
    polys = [g.monic() for g in basis if not g.is_zero()]
    polys.sort(key=lambda g: g.lead_monomial())
    minimal: List[Polynomial] = []
    for g in polys:
        lm = g.lead_monomial()
        if any(mono_divides(h.lead_monomial(), lm) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(Reducer(g.ring, others).reduce(g).monic())
    out.sort(key=lambda g: g.lead_monomial(), reverse=True)
    return out


class _PairQueue:
    def __init__(self):
        self.heap: List[Tuple[int, Monomial, int, int]] = []
        self.alive: Dict[Tuple[int, int], Monomial] = {}

    def push(self, i: int, j: int, lcm: Monomial) -> None:
        key = (min(i, j), max(i, j))
        self.alive[key] = lcm
        heapq.heappush(self.heap, (sum(lcm), lcm, key[0], key[1]))

    def peek_degree(self) -> Optional[int]:
        while self.heap and (self.heap[0][2], self.heap[0][3]) not in self.alive:
            heapq.heappop(self.heap)
        return self.heap[0][0] if self.heap else None

    def pop(self) -> Tuple[int, int]:
        self.peek_degree()
        _, _, i, j = heapq.heappop(self.heap)
        del self.alive[(i, j)]
        return i, j

    def __bool__(self) -> bool:
        return self.peek_degree() is not None


def buchberger(
    gens: Sequence[Polynomial],
    max_steps: Optional[int] = None,
    max_degree: Optional[int] = None,
) -> List[Polynomial]:
    """Reduced Groebner basis of the ideal generated by `gens` (lex order of the ring)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    max_steps = settings.gb_max_steps if max_steps is None else max_steps
    max_degree = settings.gb_max_degree if max_degree is None else max_degree

    polys: List[Polynomial] = []
    leads: List[Monomial] = []
    basis: List[int] = []
    pairs = _PairQueue()

    def update(h: Polynomial) -> None:
        nonlocal basis
        hi = len(polys)
        polys.append(h)
        lh = h.lead_monomial()
        leads.append(lh)

        candidates = list(basis)
        kept: List[int] = []
        for pos, g in enumerate(candidates):
            lcm = mono_lcm(lh, leads[g])
            if mono_coprime(lh, leads[g]):
                kept.append(g)
                continue
            rivals = candidates[pos + 1:] + kept
            if not any(mono_divides(mono_lcm(lh, leads[g2]), lcm) for g2 in rivals):
                kept.append(g)
        new_pairs = [g for g in kept if not mono_coprime(lh, leads[g])]

        for (i, j), lcm in list(pairs.alive.items()):
            if (
                mono_divides(lh, lcm)
                and mono_lcm(leads[i], lh) != lcm
                and mono_lcm(lh, leads[j]) != lcm
            ):
                del pairs.alive[(i, j)]
        for g in new_pairs:
            pairs.push(g, hi, mono_lcm(leads[g], lh))
        basis = [g for g in basis if not mono_divides(lh, leads[g])] + [hi]

    def current_reducer() -> Reducer:
        return Reducer(ring, [polys[i] for i in basis])

    inputs = sorted(((g.degree(), idx) for idx, g in enumerate(gens)))
    pos = 0
    steps = 0
    reducer: Optional[Reducer] = None
    while pos < len(inputs) or pairs:
        pair_degree = pairs.peek_degree()
        if pos < len(inputs) and (pair_degree is None or inputs[pos][0] <= pair_degree):
            f = gens[inputs[pos][1]]
            pos += 1
        else:
            i, j = pairs.pop()
            f = s_polynomial(polys[i], polys[j])
            steps += 1
            if steps > max_steps:
                logger.warning("Buchberger aborted after %d pair reductions", max_steps)
                raise CapacityError("groebner", f"more than {max_steps} pair reductions")
        if reducer is None:
            reducer = current_reducer()
        h = reducer.reduce(f)
        if h.is_zero():
            continue
        if h.degree() > max_degree:
            logger.warning("Buchberger produced an element of degree %d", h.degree())
            raise CapacityError("groebner", f"basis element of degree {h.degree()} exceeds {max_degree}")
        update(h.monic())
        reducer = None

    result = interreduce([polys[i] for i in basis])
    logger.debug("Groebner basis: %d inputs, %d pair reductions, %d elements", len(gens), steps, len(result))
    return result


def is_groebner_basis(basis: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [g for g in basis if not g.is_zero()]
    if not basis:
        return True
    reducer = Reducer(basis[0].ring, basis)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if mono_coprime(basis[a].lead_monomial(), basis[b].lead_monomial()):
                continue
            if not reducer.reduce(s_polynomial(basis[a], basis[b])).is_zero():
                return False
    return True
