"""
Exact polynomials in x_1..x_n, y_1..y_n (plus an optional elimination
variable t) under the lexicographic order t > x_1 > ... > x_n > y_1 > ... > y_n.

A monomial is a tuple of exponents. Slot 0 holds t when the ring has an
elimination block, so plain tuple comparison is the term order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from beilab.errors import DomainError, PolynomialParseError

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]

# ---------------------------------------------------------------------------
# Coefficient fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalField:
    name: str = "qq"
    characteristic: int = 0

    def convert(self, value: Coefficient) -> Fraction:
        return Fraction(value)

    def normalize(self, value):
        return value

    def inverse(self, value):
        return 1 / Fraction(value)

    def to_fraction(self, value) -> Fraction:
        return Fraction(value)


@dataclass(frozen=True)
class PrimeField:
    p: int

    @property
    def name(self) -> str:
        return f"gf{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def convert(self, value: Coefficient) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DomainError(f"coefficient {value} is not defined modulo {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def normalize(self, value: int) -> int:
        return value % self.p

    def inverse(self, value: int) -> int:
        return pow(value, -1, self.p)

    def to_fraction(self, value: int) -> Fraction:
        # symmetric representative so that -1 prints as -1
        v = value % self.p
        return Fraction(v - self.p if v > self.p // 2 else v)


Field = Union[RationalField, PrimeField]
QQ = RationalField()


def field_from_name(name: Union[str, int]) -> Field:
    """'qq' (or 'q', '0') for the rationals; a prime p, 'gfp' or 'fp' for GF(p)."""
    text = str(name).strip().lower()
    if text in ("qq", "q", "0", "rationals"):
        return QQ
    digits = text[2:] if text.startswith("gf") else text[1:] if text.startswith("f") else text
    if not digits.isdigit():
        raise DomainError(f"unknown coefficient field {name!r}")
    p = int(digits)
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise DomainError(f"{p} is not prime")
    return PrimeField(p)


# ---------------------------------------------------------------------------
# Monomial helpers
# ---------------------------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def mono_support(a: Monomial) -> int:
    m = 0
    for i, e in enumerate(a):
        if e:
            m |= 1 << i
    return m


def minimalize(monomials: Iterable[Monomial]) -> List[Monomial]:
    """Minimal generators of the monomial ideal generated by `monomials`, sorted descending."""
    kept: List[Monomial] = []
    for m in sorted(set(monomials), key=lambda u: (sum(u), u)):
        if not any(mono_divides(g, m) for g in kept):
            kept.append(m)
    return sorted(kept, reverse=True)


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolynomialRing:
    n: int
    field: Field = QQ
    elimination: bool = False

    @property
    def nvars(self) -> int:
        return 2 * self.n + (1 if self.elimination else 0)

    @property
    def offset(self) -> int:
        return 1 if self.elimination else 0

    def x_index(self, i: int) -> int:
        return self.offset + i - 1

    def y_index(self, i: int) -> int:
        return self.offset + self.n + i - 1

    def variable_name(self, index: int) -> str:
        if self.elimination and index == 0:
            return "t"
        k = index - self.offset
        return f"x{k + 1}" if k < self.n else f"y{k - self.n + 1}"

    def unit(self, index: int) -> Monomial:
        e = [0] * self.nvars
        e[index] = 1
        return tuple(e)

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def variable(self, index: int) -> "Polynomial":
        return Polynomial(self, {self.unit(index): self.field.convert(1)})

    def x(self, i: int) -> "Polynomial":
        return self.variable(self.x_index(i))

    def y(self, i: int) -> "Polynomial":
        return self.variable(self.y_index(i))

    def t(self) -> "Polynomial":
        if not self.elimination:
            raise ValueError("ring has no elimination variable")
        return self.variable(0)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def constant(self, c: Coefficient) -> "Polynomial":
        return Polynomial(self, {self.one_monomial(): self.field.convert(c)})

    def monomial(self, exponents: Monomial, c: Coefficient = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exponents): self.field.convert(c)})

    def with_elimination(self) -> "PolynomialRing":
        return PolynomialRing(self.n, self.field, True)

    def without_elimination(self) -> "PolynomialRing":
        return PolynomialRing(self.n, self.field, False)

    def with_field(self, field: Field) -> "PolynomialRing":
        return PolynomialRing(self.n, field, self.elimination)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, Coefficient]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._lead: Optional[Monomial] = None

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lead_monomial(self) -> Monomial:
        if self._lead is None:
            if not self.terms:
                raise ValueError("the zero polynomial has no leading term")
            self._lead = max(self.terms)
        return self._lead

    def lead_coefficient(self) -> Coefficient:
        return self.terms[self.lead_monomial()]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self) -> List[Tuple[Monomial, Coefficient]]:
        return sorted(self.terms.items(), reverse=True)

    def variables_used(self) -> int:
        m = 0
        for mono in self.terms:
            m |= mono_support(mono)
        return m

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        norm = self.ring.field.normalize
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = norm(out.get(m, 0) + c)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        norm = self.ring.field.normalize
        return Polynomial(self.ring, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def scale(self, c: Coefficient) -> "Polynomial":
        field = self.ring.field
        c = field.convert(c)
        return Polynomial(self.ring, {m: field.normalize(v * c) for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: Coefficient) -> "Polynomial":
        norm = self.ring.field.normalize
        return Polynomial(self.ring, {mono_mul(m, mono): norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        norm = self.ring.field.normalize
        out: Dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = norm(out.get(m, 0) + c1 * c2)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inverse(self.lead_coefficient()))

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; a non-zero remainder is an internal error."""
        self._check(divisor)
        field = self.ring.field
        lm, lc = divisor.lead_monomial(), divisor.lead_coefficient()
        inv = field.inverse(lc)
        rest = dict(self.terms)
        quotient: Dict[Monomial, Coefficient] = {}
        while rest:
            m = max(rest)
            if not mono_divides(lm, m):
                raise AssertionError("division is not exact")
            q = mono_div(m, lm)
            c = field.normalize(rest[m] * inv)
            quotient[q] = c
            for dm, dc in divisor.terms.items():
                t = mono_mul(dm, q)
                v = field.normalize(rest.get(t, 0) - c * dc)
                if v == 0:
                    rest.pop(t, None)
                else:
                    rest[t] = v
        return Polynomial(self.ring, quotient)

    # -- ring changes -----------------------------------------------------

    def change_ring(self, ring: PolynomialRing) -> "Polynomial":
        """Move between the plain and the elimination ring (same n); t must be absent when dropping it."""
        if ring.n != self.ring.n:
            raise ValueError("rings have different vertex counts")
        src, dst = self.ring, ring
        out: Dict[Monomial, Coefficient] = {}
        for m, c in self.terms.items():
            if src.elimination and not dst.elimination:
                if m[0]:
                    raise ValueError("polynomial still involves the elimination variable")
                m = m[1:]
            elif dst.elimination and not src.elimination:
                m = (0,) + m
            out[m] = dst.field.convert(src.field.to_fraction(c)) if dst.field != src.field else c
        return Polynomial(dst, out)

    def change_field(self, field: Field) -> "Polynomial":
        return self.change_ring(self.ring.with_field(field))

    def substitute(self, index: int, replacement: "Polynomial") -> "Polynomial":
        """Replace the variable at `index` by `replacement`."""
        self._check(replacement)
        powers = [self.ring.constant(1)]
        out = self.ring.zero()
        for m, c in self.terms.items():
            e = m[index]
            while len(powers) <= e:
                powers.append(powers[-1] * replacement)
            rest = m[:index] + (0,) + m[index + 1:]
            out = out + powers[e].mul_term(rest, c)
        return out

    def rename(self, ring: PolynomialRing, index_map: Dict[int, int]) -> "Polynomial":
        """Send variable index i to index_map[i] in `ring` (indices not listed must be unused)."""
        out: Dict[Monomial, Coefficient] = {}
        norm = ring.field.normalize
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, a in enumerate(m):
                if a:
                    e[index_map[i]] += a
            key = tuple(e)
            out[key] = norm(out.get(key, 0) + c)
        return Polynomial(ring, out)

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_monomial(ring: PolynomialRing, mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e:
            name = ring.variable_name(i)
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out: List[str] = []
    for m, c in f.sorted_terms():
        value = f.ring.field.to_fraction(c)
        sign = "-" if value < 0 else "+"
        value = abs(value)
        body = format_monomial(f.ring, m)
        if not body:
            text = str(value)
        elif value == 1:
            text = body
        else:
            text = f"{value}*{body}"
        if not out:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f"{sign} {text}")
    return " ".join(out)


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_VAR = re.compile(r"^(t|x|y)(\d*)(?:\^(\d+))?$")
_FACTOR_NUM = re.compile(r"^\d+(?:/\d+)?$")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse '±c*x1^a*y3^b ± ...' (whitespace ignored)."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise PolynomialParseError("empty polynomial")
    if compact == "0":
        return ring.zero()
    pos = 0
    terms: Dict[Monomial, Coefficient] = {}
    norm = ring.field.normalize
    for match in _TERM.finditer(compact):
        if match.start() != pos:
            raise PolynomialParseError("unexpected sign", compact[pos:match.start()])
        pos = match.end()
        sign, body = match.groups()
        coeff = Fraction(-1 if sign == "-" else 1)
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            if _FACTOR_NUM.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR_VAR.match(factor)
            if not m:
                raise PolynomialParseError("bad factor", factor)
            kind, idx, power = m.group(1), m.group(2), int(m.group(3) or 1)
            if kind == "t":
                if idx or not ring.elimination:
                    raise PolynomialParseError("unknown variable", factor)
                exps[0] += power
                continue
            if not idx or not 1 <= int(idx) <= ring.n:
                raise PolynomialParseError("variable index out of range", factor)
            slot = ring.x_index(int(idx)) if kind == "x" else ring.y_index(int(idx))
            exps[slot] += power
        key = tuple(exps)
        terms[key] = norm(terms.get(key, 0) + ring.field.convert(coeff))
    if pos != len(compact):
        raise PolynomialParseError("trailing input", compact[pos:])
    return Polynomial(ring, terms)


def iter_monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of the given total degree, in descending lex order."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for first in range(degree, -1, -1):
        for rest in iter_monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest
