"""
Binomial edge ideals J_G = (x_i y_j - x_j y_i : {i,j} in E(G)) and the
constructions built on them: minimal primes P_W(G), unmixedness, the
Cohen-Macaulay test for closed graphs, symbolic powers as intersections
of prime powers, and the net witness for J^(k) != J^k.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from beilab.errors import CapacityError, DomainError, VerificationError
from beilab.services.graph import (
    PATTERNS,
    CutSet,
    Graph,
    bit,
    classify_block_graph,
    component_masks,
    cut_point_sets,
    is_closed_labeling,
    is_induced_embedding,
    is_path_graph,
    maximal_cliques,
    popcount,
    recognize_closed,
    vertices_of,
)
from beilab.services.ideal import Ideal
from beilab.services.polynomial import QQ, Field, Polynomial, PolynomialRing, parse_polynomial
from beilab.settings import settings

logger = logging.getLogger(__name__)

# g in J^(2) \ J^2 for the net on {1..6} with edges 12, 34, 56, 23, 35, 25
NET_WITNESS = (
    "x3*x5*x6*y1*y2*y4 - x1*x5*x6*y2*y3*y4 - x3*x4*x5*y1*y2*y6"
    " + x1*x2*x5*y3*y4*y6 + x1*x3*x4*y2*y5*y6 - x1*x2*x3*y4*y5*y6"
)


def minor(ring: PolynomialRing, i: int, j: int) -> Polynomial:
    """f_ij = x_i y_j - x_j y_i."""
    return ring.x(i) * ring.y(j) - ring.x(j) * ring.y(i)


def binomial_edge_ideal(G: Graph, field: Field = QQ) -> Ideal:
    ring = PolynomialRing(G.n, field)
    return Ideal(ring, [minor(ring, i, j) for i, j in G.edges()])


# ---------------------------------------------------------------------------
# Minimal primes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeComponent:
    cut_set: CutSet
    ring: PolynomialRing
    generators: Tuple[Polynomial, ...]
    height: int

    @property
    def W(self) -> Tuple[int, ...]:
        return self.cut_set.W

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)


def prime_component(G: Graph, cut_set: CutSet, ring: PolynomialRing) -> PrimeComponent:
    gens: List[Polynomial] = []
    for i in cut_set.W:
        gens += [ring.x(i), ring.y(i)]
    for comp in cut_set.components:
        gens += [minor(ring, i, j) for i, j in combinations(comp, 2)]
    return PrimeComponent(cut_set, ring, tuple(gens), cut_set.height(G.n))


def minimal_primes(G: Graph, field: Field = QQ) -> List[PrimeComponent]:
    ring = PolynomialRing(G.n, field)
    return [prime_component(G, w, ring) for w in cut_point_sets(G)]


def dimension_from_cut_sets(G: Graph) -> int:
    """max{n + c(W) - |W| : W a cut-point set}."""
    return max(G.n + w.c - len(w.W) for w in cut_point_sets(G))


def unmixed(G: Graph) -> bool:
    sets = cut_point_sets(G)
    base = G.n + sets[0].c
    return all(G.n + w.c - len(w.W) == base for w in sets)


# ---------------------------------------------------------------------------
# Cohen-Macaulay closed graphs
# ---------------------------------------------------------------------------


@dataclass
class ClosedCMResult:
    unmixed: Optional[bool]
    cm: bool
    interval_forms: Optional[List[List[int]]]


def cm_closed(G: Graph) -> ClosedCMResult:
    """
    G must be closed in its given labeling. J_G is Cohen-Macaulay iff on each
    component [a, b] the maximal cliques are [a_1, a_2], [a_2, a_3], ...,
    [a_r, a_{r+1}] with a_1 = a and a_{r+1} = b.
    """
    if not is_closed_labeling(G):
        raise DomainError("graph is not closed in the given labeling")
    cover = maximal_cliques(G)
    forms: List[List[int]] = []
    cm = True
    for comp in component_masks(G):
        verts = vertices_of(comp)
        lo, hi = verts[0], verts[-1]
        if verts != list(range(lo, hi + 1)):
            raise AssertionError("components of a closed labeling are intervals")
        cliques = [c for c in cover.cliques if comp & bit(c[0])]
        if lo == hi:
            forms.append([lo])
            continue
        chain = [lo]
        for c in cliques:
            if c[0] != chain[-1] or c[-1] <= c[0]:
                break
            chain.append(c[-1])
        if chain[-1] != hi or len(chain) != len(cliques) + 1:
            cm = False
            break
        forms.append(chain)
    unmixed_flag = None
    if G.n <= settings.cut_set_max_n:
        unmixed_flag = unmixed(G)
    else:
        logger.info("unmixedness of %s not computed: n=%d exceeds cut_set_max_n", G, G.n)
    return ClosedCMResult(unmixed_flag, cm, forms if cm else None)


# ---------------------------------------------------------------------------
# Symbolic powers
# ---------------------------------------------------------------------------


class _PrimePowers:
    """P_W(G)^k for every cut-point set W, built on first use and kept."""

    def __init__(self, G: Graph, field: Field):
        self.G = G
        self.ring = PolynomialRing(G.n, field)
        self.components = [prime_component(G, w, self.ring) for w in cut_point_sets(G)]
        self._powers: Dict[Tuple[Tuple[int, ...], int], Ideal] = {}
        self._lock = threading.Lock()

    def power(self, component: PrimeComponent, k: int) -> Ideal:
        key = (component.W, k)
        with self._lock:
            cached = self._powers.get(key)
        if cached is not None:
            return cached
        ideal = component.ideal().power(k)
        ideal.groebner_basis()
        with self._lock:
            return self._powers.setdefault(key, ideal)


@lru_cache(maxsize=64)
def _prime_powers(G: Graph, field: Field) -> _PrimePowers:
    return _PrimePowers(G, field)


def symbolic_power_membership(f: Polynomial, G: Graph, k: int) -> bool:
    """f in J_G^(k), i.e. f in P_W(G)^k for every cut-point set W."""
    if k < 1:
        raise ValueError("symbolic powers start at k = 1")
    ctx = _prime_powers(G, f.ring.field)
    for comp in ctx.components:
        if not ctx.power(comp, k).contains(f):
            logger.debug("witness leaves P_W^%d for W=%s", k, comp.W)
            return False
    return True


def _check_budget(G: Graph, k: int) -> None:
    if G.n > settings.symbolic_max_n or k > settings.symbolic_max_k:
        raise CapacityError(
            "symbolic_power",
            f"n={G.n}, k={k} exceeds budget n<={settings.symbolic_max_n}, k<={settings.symbolic_max_k}",
        )


def symbolic_power(G: Graph, k: int, field: Field = QQ) -> Ideal:
    _check_budget(G, k)
    ctx = _prime_powers(G, field)
    parts = sorted((ctx.power(c, k) for c in ctx.components), key=len)
    return reduce(lambda a, b: a.intersection(b), parts)


def symbolic_equals_ordinary(G: Graph, k: int, field: Field = QQ) -> bool:
    """J_G^(k) == J_G^k, decided by reduced Groebner basis equality."""
    _check_budget(G, k)
    ordinary = binomial_edge_ideal(G, field).power(k)
    ctx = _prime_powers(G, field)
    if len(ctx.components) == 1:
        return ctx.power(ctx.components[0], k).equals(ordinary)
    return symbolic_power(G, k, field).equals(ordinary)


# ---------------------------------------------------------------------------
# Net witness
# ---------------------------------------------------------------------------


def net_witness_family(G: Graph, embedding: Dict[int, int], k: int, field: Field = QQ) -> Polynomial:
    """g * (x_2 y_3 - x_3 y_2)^(k-2), indices transported along the net embedding."""
    if k < 2:
        raise DomainError("the witness family starts at k = 2")
    if not is_induced_embedding(G, PATTERNS["net"], embedding):
        raise DomainError("embedding is not an induced net")
    net_ring = PolynomialRing(6, field)
    ring = PolynomialRing(G.n, field)
    index_map = {}
    for p, v in embedding.items():
        index_map[net_ring.x_index(p)] = ring.x_index(v)
        index_map[net_ring.y_index(p)] = ring.y_index(v)
    g = parse_polynomial(NET_WITNESS, net_ring).rename(ring, index_map)
    return g * minor(ring, embedding[2], embedding[3]) ** (k - 2)


def witness_memberships(G: Graph, f: Polynomial, k: int) -> Tuple[bool, bool]:
    """(f in J^(k), f in J^k)."""
    symbolic = symbolic_power_membership(f, G, k)
    ordinary = binomial_edge_ideal(G, f.ring.field).power(k).contains(f)
    return symbolic, ordinary


def verify_witness(G: Graph, f: Polynomial, k: int) -> None:
    symbolic, ordinary = witness_memberships(G, f, k)
    if not symbolic or ordinary:
        raise VerificationError(f"net witness failed at k={k}: symbolic={symbolic}, ordinary={ordinary}")


# ---------------------------------------------------------------------------
# Initial ideal of a closed graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteInitialGraph:
    """Edges (i, j) stand for {x_i, y_j}."""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    def isolated_vertices(self) -> List[str]:
        xs = {i for i, _ in self.edges}
        ys = {j for _, j in self.edges}
        return [f"x{i}" for i in range(1, self.n + 1) if i not in xs] + [
            f"y{j}" for j in range(1, self.n + 1) if j not in ys
        ]

    def edge_ideal(self, field: Field = QQ) -> Ideal:
        ring = PolynomialRing(self.n, field)
        return Ideal(ring, [ring.x(i) * ring.y(j) for i, j in self.edges])


def initial_bipartite_graph(G: Graph) -> BipartiteInitialGraph:
    if not is_closed_labeling(G):
        raise DomainError("graph is not closed in the given labeling")
    return BipartiteInitialGraph(G.n, tuple(G.edges()))


def induced_matching_number(H: BipartiteInitialGraph) -> int:
    """Largest set of edges of H, pairwise disjoint, with no edge of H joining two of them."""
    m = len(H.edges)
    if m > settings.matching_max_edges:
        raise CapacityError("induced_matching", f"{m} edges exceed matching_max_edges={settings.matching_max_edges}")
    edge_set = set(H.edges)
    conflict = [0] * m
    for a, b in combinations(range(m), 2):
        (i, j), (k, l) = H.edges[a], H.edges[b]
        if i == k or j == l or (i, l) in edge_set or (k, j) in edge_set:
            conflict[a] |= 1 << b
            conflict[b] |= 1 << a
    best = 0

    def search(candidates: int, size: int) -> None:
        nonlocal best
        if size + popcount(candidates) <= best:
            return
        if not candidates:
            best = size
            return
        low = candidates & -candidates
        e = low.bit_length() - 1
        search(candidates & ~low & ~conflict[e], size + 1)
        search(candidates & ~low, size)

    search((1 << m) - 1, 0)
    return best


# ---------------------------------------------------------------------------
# Regular sequences from the depth arguments
# ---------------------------------------------------------------------------


def complete_graph_regular_sequence(n: int, field: Field = QQ) -> List[Polynomial]:
    """y_{n-2} - x_{n-1}, y_{n-1} - x_n, y_n: a maximal regular sequence on S/J_{K_n}^k, k >= 2."""
    if n < 3:
        raise DomainError("needs n >= 3")
    ring = PolynomialRing(n, field)
    return [ring.y(n - 2) - ring.x(n - 1), ring.y(n - 1) - ring.x(n), ring.y(n)]


def is_regular_sequence(I: Ideal, forms: Sequence[Polynomial]) -> bool:
    """Each form is a non-zerodivisor modulo I plus the previous forms, and the quotient stays proper."""
    current = I
    for ell in forms:
        if not current.quotient(ell).equals(current):
            return False
        current = current + Ideal(I.ring, [ell])
    return not current.is_unit()


@dataclass
class CliqueSplitting:
    graph: Graph
    forms: List[Polynomial]
    vertex_map: Tuple[int, ...]

    def identify(self, f: Polynomial, ring: PolynomialRing) -> Polynomial:
        """Image of f under x'_v -> x_{vertex_map[v]}, y'_v -> y_{vertex_map[v]}."""
        index_map = {}
        for v, target in enumerate(self.vertex_map, start=1):
            index_map[f.ring.x_index(v)] = ring.x_index(target)
            index_map[f.ring.y_index(v)] = ring.y_index(target)
        return f.rename(ring, index_map)


def clique_splitting(G: Graph, field: Field = QQ) -> CliqueSplitting:
    """
    For a connected Cohen-Macaulay closed G with cliques [a_i, a_{i+1}], the
    disjoint union G' of cliques [a_i + i - 1, a_{i+1} + i - 1] and the linear
    forms gluing consecutive cliques back together.
    """
    result = cm_closed(G)
    if not result.cm or len(result.interval_forms) != 1:
        raise DomainError("clique splitting needs a connected Cohen-Macaulay closed graph")
    a = result.interval_forms[0]
    r = len(a) - 1
    n_split = G.n + r - 1
    edges = []
    vertex_map = [0] * n_split
    for i in range(1, r + 1):
        lo, hi = a[i - 1] + i - 1, a[i] + i - 1
        edges += list(combinations(range(lo, hi + 1), 2))
        for v in range(lo, hi + 1):
            vertex_map[v - 1] = v - (i - 1)
    split = Graph.from_edges(n_split, edges)
    ring = PolynomialRing(n_split, field)
    forms = []
    for i in range(2, r + 1):
        left, right = a[i - 1] + i - 2, a[i - 1] + i - 1
        forms += [ring.y(left) - ring.y(right), ring.x(left) - ring.x(right)]
    return CliqueSplitting(split, forms, tuple(vertex_map))


# ---------------------------------------------------------------------------
# Cohen-Macaulayness of powers
# ---------------------------------------------------------------------------


def powers_cm_prediction(G: Graph, k: int) -> Optional[bool]:
    """
    Whether S/J_G^k is Cohen-Macaulay, when known from graph structure:
    closed graphs (k = 1 by the interval test, k >= 2 iff every component is
    a path) and connected block graphs (k >= 2 iff G is a path).
    """
    labeling = recognize_closed(G)
    if labeling is not None:
        if k == 1:
            return cm_closed(G.relabel(labeling)).cm
        return all(is_path_graph(G.induced(vertices_of(m))[0]) for m in component_masks(G))
    block = classify_block_graph(G)
    if block.is_block and len(component_masks(G)) == 1:
        return block.cm_by_vertex_rule if k == 1 else is_path_graph(G)
    return None
