"""
Simple undirected graphs on the vertex set [n] = {1, ..., n}.

Adjacency is stored as one int bitmask per vertex: bit v-1 of adj[u-1]
is set iff {u, v} is an edge. Everything here is a pure function of an
immutable Graph value.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from beilab.errors import CapacityError, GraphParseError
from beilab.settings import settings

logger = logging.getLogger(__name__)

GRAPH6_MAX_N = 62

# ---------------------------------------------------------------------------
# Bit helpers
# ---------------------------------------------------------------------------


def bit(v: int) -> int:
    return 1 << (v - 1)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> List[int]:
    out: List[int] = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# Graph value
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for u in range(1, self.n + 1):
            row = self.adj[u - 1]
            if row & ~full:
                raise ValueError(f"vertex {u} has a neighbour outside [n]")
            if row & bit(u):
                raise ValueError(f"loop at vertex {u}")
            for v in vertices_of(row):
                if not self.adj[v - 1] & bit(u):
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u - 1] |= bit(v)
            rows[v - 1] |= bit(u)
        return cls(n, tuple(rows))

    @classmethod
    def edgeless(cls, n: int) -> "Graph":
        return cls(n, tuple([0] * n))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u - 1] & bit(v))

    def neighbor_mask(self, v: int) -> int:
        return self.adj[v - 1]

    def neighbors(self, v: int) -> List[int]:
        return vertices_of(self.adj[v - 1])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v - 1])

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for u in range(1, self.n + 1):
            for v in vertices_of(self.adj[u - 1] >> u << u):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def is_complete(self) -> bool:
        return all(row | bit(v) == self.full_mask for v, row in enumerate(self.adj, start=1))

    def is_clique(self, mask: int) -> bool:
        for v in vertices_of(mask):
            if (mask & ~bit(v)) & ~self.adj[v - 1]:
                return False
        return True

    def relabel(self, labeling: Sequence[int]) -> "Graph":
        """Vertex v of self becomes vertex labeling[v-1] of the result."""
        if sorted(labeling) != list(range(1, self.n + 1)):
            raise ValueError("labeling is not a permutation of [n]")
        return Graph.from_edges(self.n, [(labeling[u - 1], labeling[v - 1]) for u, v in self.edges()])

    def induced(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """Induced subgraph relabelled 1..m in increasing order; also returns the original labels."""
        keep = sorted(set(vertices))
        if not keep:
            raise ValueError("cannot induce on an empty vertex set")
        position = {v: i + 1 for i, v in enumerate(keep)}
        edges = [(position[u], position[v]) for u, v in self.edges() if u in position and v in position]
        return Graph.from_edges(len(keep), edges), keep

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    def __str__(self) -> str:
        return to_edge_list(self, header=False).replace("\n", ",") or f"E{self.n}"


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

_HEADER = re.compile(r"^\s*#\s*n\s*=\s*(\d+)\s*$")


def _looks_like_graph6(text: str) -> bool:
    body = text[len(">>graph6<<"):] if text.startswith(">>graph6<<") else text
    return bool(body) and not any(ch.isspace() for ch in body) and all(63 <= ord(ch) <= 126 for ch in body)


def parse_graph(text: str) -> Graph:
    """
    Parse an edge list ("i j" per line, '#' comments, optional "# n=N"
    header) or a single graph6 record.
    """
    stripped = text.strip()
    if _looks_like_graph6(stripped):
        return _parse_graph6(stripped)
    return _parse_edge_list(text)


def _parse_graph6(record: str) -> Graph:
    body = record[len(">>graph6<<"):] if record.startswith(">>graph6<<") else record
    if ord(body[0]) == 126:
        raise GraphParseError(f"graph6 order field exceeds {GRAPH6_MAX_N}", body[:4])
    try:
        g = nx.from_graph6_bytes(body.encode("ascii"))
    except (nx.NetworkXError, ValueError) as e:
        raise GraphParseError(f"malformed graph6 record ({e})", body) from e
    n = g.number_of_nodes()
    if n < 1:
        raise GraphParseError("graph6 record declares no vertices", body)
    return Graph.from_edges(n, [(u + 1, v + 1) for u, v in g.edges()])


def _parse_edge_list(text: str) -> Graph:
    declared = 0
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        m = _HEADER.match(raw)
        if m:
            declared = max(declared, int(m.group(1)))
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"malformed line {lineno}", raw.strip())
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            bad = next(t for t in tokens if not re.fullmatch(r"[+-]?\d+", t))
            raise GraphParseError(f"malformed vertex on line {lineno}", bad) from None
        for tok, val in zip(tokens, (u, v)):
            if val <= 0:
                raise GraphParseError("vertex index must be positive", tok)
        if u == v:
            raise GraphParseError("loop edge", line)
        edges.append((min(u, v), max(u, v)))
    n = max([declared] + [v for _, v in edges])
    if n < 1:
        raise GraphParseError("no vertices in input", text.strip()[:40])
    return Graph.from_edges(n, sorted(set(edges)))


def to_edge_list(G: Graph, header: bool = True) -> str:
    lines = [f"# n={G.n}"] if header else []
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines)


def to_graph6(G: Graph) -> str:
    if G.n > GRAPH6_MAX_N:
        raise GraphParseError(f"graph6 output is limited to n <= {GRAPH6_MAX_N}", str(G.n))
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from((u - 1, v - 1) for u, v in G.edges())
    return nx.to_graph6_bytes(g, header=False).decode("ascii").strip()


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------

NET_EDGES = [(1, 2), (3, 4), (5, 6), (2, 3), (3, 5), (2, 5)]
TENT_EDGES = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (2, 5), (3, 5), (1, 6), (3, 6)]
CLAW_EDGES = [(1, 2), (1, 3), (1, 4)]

_NAMED = re.compile(r"^(K|P|C|E|star)(\d+)$")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def named_graph(name: str) -> Optional[Graph]:
    """K<n>, P<n>, C<n>, E<n> (edgeless), star<n> (= K_{1,n}), claw, net, tent."""
    key = name.strip()
    if key.lower() == "claw":
        return Graph.from_edges(4, CLAW_EDGES)
    if key.lower() == "net":
        return Graph.from_edges(6, NET_EDGES)
    if key.lower() == "tent":
        return Graph.from_edges(6, TENT_EDGES)
    m = _NAMED.match(key)
    if not m:
        return None
    kind, size = m.group(1), int(m.group(2))
    if size < 1:
        return None
    if kind == "K":
        return complete_graph(size)
    if kind == "P":
        return path_graph(size)
    if kind == "C":
        return cycle_graph(size) if size >= 3 else None
    if kind == "E":
        return Graph.edgeless(size)
    return Graph.from_edges(size + 1, [(1, v) for v in range(2, size + 2)])


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def component_masks(G: Graph, within: Optional[int] = None) -> List[int]:
    """Connected components of G restricted to the vertex mask `within`."""
    remaining = G.full_mask if within is None else within
    out = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            grow = G.adj[low.bit_length() - 1] & remaining & ~comp
            comp |= grow
            frontier |= grow
        out.append(comp)
        remaining &= ~comp
    return out


def count_components(G: Graph, within: int) -> int:
    return len(component_masks(G, within))


def connected_components(G: Graph) -> List[List[int]]:
    return [vertices_of(m) for m in component_masks(G)]


def is_connected(G: Graph) -> bool:
    return len(component_masks(G)) == 1


def is_path_graph(G: Graph) -> bool:
    """True iff G is a path (P_1 included) under some labeling."""
    if not is_connected(G):
        return False
    degrees = [G.degree(v) for v in G.vertices]
    return G.edge_count() == G.n - 1 and max(degrees, default=0) <= 2


def _bfs_path(G: Graph, allowed: int, source: int, target: int) -> Optional[List[int]]:
    parent: Dict[int, int] = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in vertices_of(G.adj[u - 1] & allowed):
                if w in parent:
                    continue
                parent[w] = u
                if w == target:
                    path = [w]
                    while parent[path[-1]]:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(w)
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# Chordality
# ---------------------------------------------------------------------------


class ChordalCheck(NamedTuple):
    chordal: bool
    ordering: Optional[List[int]]
    cycle: Optional[List[int]]


def _maximum_cardinality_search(G: Graph) -> List[int]:
    weight = [0] * (G.n + 1)
    visited = 0
    order = []
    for _ in range(G.n):
        best = max(
            (v for v in G.vertices if not visited & bit(v)),
            key=lambda v: (weight[v], -v),
        )
        order.append(best)
        visited |= bit(best)
        for w in vertices_of(G.adj[best - 1] & ~visited):
            weight[w] += 1
    # reverse visiting order is a perfect elimination ordering when G is chordal
    return order[::-1]


def is_perfect_elimination_ordering(G: Graph, ordering: Sequence[int]) -> bool:
    later = G.full_mask
    for v in ordering:
        later &= ~bit(v)
        if not G.is_clique(G.adj[v - 1] & later):
            return False
    return True


def _induced_cycle(G: Graph) -> Optional[List[int]]:
    for v in G.vertices:
        closed = G.adj[v - 1] | bit(v)
        for u, w in combinations(G.neighbors(v), 2):
            if G.has_edge(u, w):
                continue
            allowed = (G.full_mask & ~closed) | bit(u) | bit(w)
            path = _bfs_path(G, allowed, u, w)
            if path is not None:
                return [v] + path
    return None


def is_chordal(G: Graph) -> ChordalCheck:
    ordering = _maximum_cardinality_search(G)
    if is_perfect_elimination_ordering(G, ordering):
        return ChordalCheck(True, ordering, None)
    cycle = _induced_cycle(G)
    if cycle is None:
        raise AssertionError("ordering check failed but no induced cycle exists")
    return ChordalCheck(False, None, cycle)


# ---------------------------------------------------------------------------
# Maximal cliques
# ---------------------------------------------------------------------------


@dataclass
class CliqueCover:
    cliques: List[Tuple[int, ...]]
    interval_form: Optional[List[int]] = None

    def dimensions(self) -> List[int]:
        """|F| - 1 for every clique with at least one edge, sorted descending."""
        return sorted((len(c) - 1 for c in self.cliques if len(c) >= 2), reverse=True)


def _bron_kerbosch(G: Graph, r: int, p: int, x: int, out: List[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    pivot_pool = p | x
    pivot = max(vertices_of(pivot_pool), key=lambda u: popcount(p & G.adj[u - 1]))
    for v in vertices_of(p & ~G.adj[pivot - 1]):
        b = bit(v)
        _bron_kerbosch(G, r | b, p & G.adj[v - 1], x & G.adj[v - 1], out)
        p &= ~b
        x |= b


def _interval_chain(cliques: List[Tuple[int, ...]], lo: int, hi: int) -> Optional[List[int]]:
    """a_1 < ... < a_{r+1} when the cliques are [a_i, a_{i+1}] chained over [lo, hi]."""
    if not cliques:
        return None
    if len(cliques) == 1 and cliques[0] == (lo,) and lo == hi:
        return [lo]
    chain = [lo]
    for c in cliques:
        if len(c) < 2 or c[0] != chain[-1] or list(c) != list(range(c[0], c[-1] + 1)):
            return None
        chain.append(c[-1])
    return chain if chain[-1] == hi else None


def maximal_cliques(G: Graph) -> CliqueCover:
    found: List[int] = []
    _bron_kerbosch(G, 0, G.full_mask, 0, found)
    cliques = sorted(tuple(vertices_of(m)) for m in found)
    return CliqueCover(cliques, _interval_chain(cliques, 1, G.n))


def clique_membership(G: Graph, cover: Optional[CliqueCover] = None) -> Dict[int, int]:
    cover = cover or maximal_cliques(G)
    counts = {v: 0 for v in G.vertices}
    for c in cover.cliques:
        for v in c:
            counts[v] += 1
    return counts


# ---------------------------------------------------------------------------
# Forbidden induced subgraphs
# ---------------------------------------------------------------------------

PATTERNS: Dict[str, Graph] = {
    "claw": Graph.from_edges(4, CLAW_EDGES),
    "net": Graph.from_edges(6, NET_EDGES),
    "tent": Graph.from_edges(6, TENT_EDGES),
}


def find_induced(G: Graph, pattern: Graph) -> Optional[Dict[int, int]]:
    """First induced embedding pattern -> G (pattern vertex -> graph vertex), candidates ascending."""
    k = pattern.n
    image: List[int] = []

    def extend(p: int, used: int) -> bool:
        if p > k:
            return True
        for v in G.vertices:
            if used & bit(v):
                continue
            if all(G.has_edge(image[q - 1], v) == pattern.has_edge(q, p) for q in range(1, p)):
                image.append(v)
                if extend(p + 1, used | bit(v)):
                    return True
                image.pop()
        return False

    if k > G.n or not extend(1, 0):
        return None
    return {p: image[p - 1] for p in range(1, k + 1)}


def is_induced_embedding(G: Graph, pattern: Graph, embedding: Dict[int, int]) -> bool:
    if sorted(embedding) != list(pattern.vertices) or len(set(embedding.values())) != pattern.n:
        return False
    if any(not 1 <= v <= G.n for v in embedding.values()):
        return False
    return all(
        G.has_edge(embedding[p], embedding[q]) == pattern.has_edge(p, q)
        for p, q in combinations(pattern.vertices, 2)
    )


def forbidden_subgraph_scan(G: Graph) -> Dict[str, Optional[Dict[int, int]]]:
    return {name: find_induced(G, pattern) for name, pattern in PATTERNS.items()}


# ---------------------------------------------------------------------------
# Closed graphs (proper interval graphs)
# ---------------------------------------------------------------------------


def is_closed_labeling(G: Graph) -> bool:
    """For all i < j < k: {i,k} an edge implies {i,j} and {j,k} are edges."""
    for i, k in G.edges():
        between = ((1 << (k - 1)) - 1) & ~((1 << i) - 1)
        if between & ~(G.adj[i - 1] & G.adj[k - 1]):
            return False
    return True


def _lex_bfs(G: Graph, within: int, previous: Optional[List[int]] = None) -> List[int]:
    """
    LexBFS over the vertices of `within`. With `previous`, ties go to the
    vertex appearing last in it (the LexBFS+ rule), else to the smallest label.
    """
    rank = {v: i for i, v in enumerate(previous)} if previous else {}
    labels: Dict[int, List[int]] = {v: [] for v in vertices_of(within)}
    order: List[int] = []
    step = len(labels)
    while labels:
        if previous:
            v = max(labels, key=lambda u: (labels[u], rank[u]))
        else:
            v = max(labels, key=lambda u: (labels[u], -u))
        del labels[v]
        order.append(v)
        for w in vertices_of(G.adj[v - 1]):
            if w in labels:
                labels[w].append(step)
        step -= 1
    return order


def _umbrella(G: Graph, order: List[int]) -> bool:
    position = {v: i for i, v in enumerate(order)}
    for a, c in combinations(order, 2):
        if not G.has_edge(a, c):
            continue
        for b in order[position[a] + 1:position[c]]:
            if not (G.has_edge(a, b) and G.has_edge(b, c)):
                return False
    return True


def recognize_closed(G: Graph) -> Optional[List[int]]:
    """
    A labeling (labeling[v-1] = new label of v) under which G is closed,
    or None when G is not a proper interval graph.
    """
    if is_closed_labeling(G):
        return list(G.vertices)
    order: List[int] = []
    for comp in component_masks(G):
        sweep = _lex_bfs(G, comp)
        sweep = _lex_bfs(G, comp, sweep)
        sweep = _lex_bfs(G, comp, sweep)
        if not _umbrella(G, sweep):
            logger.debug("third LexBFS+ sweep is not an umbrella ordering: %s", sweep)
            return None
        order.extend(sweep)
    labeling = [0] * G.n
    for new, v in enumerate(order, start=1):
        labeling[v - 1] = new
    if not is_closed_labeling(G.relabel(labeling)):
        raise AssertionError("umbrella ordering failed the closed-labeling scan")
    return labeling


# ---------------------------------------------------------------------------
# Cut-point sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutSet:
    W: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...]
    c: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "c", len(self.components))

    def height(self, n: int) -> int:
        return n - self.c + len(self.W)


def cut_point_sets(G: Graph) -> List[CutSet]:
    """All W (empty set included) such that restoring any i in W lowers the component count."""
    if G.n > settings.cut_set_max_n:
        raise CapacityError("cut_point_sets", f"n={G.n} exceeds cut_set_max_n={settings.cut_set_max_n}")
    full = G.full_mask
    counts: Dict[int, int] = {}

    def c(w: int) -> int:
        if w not in counts:
            counts[w] = count_components(G, full & ~w)
        return counts[w]

    out = []
    for size in range(G.n + 1):
        for W in combinations(G.vertices, size):
            w = mask_of(W)
            if all(c(w & ~bit(i)) < c(w) for i in W):
                comps = tuple(tuple(vertices_of(m)) for m in component_masks(G, full & ~w))
                out.append(CutSet(tuple(W), comps))
    return out


# ---------------------------------------------------------------------------
# Longest induced path
# ---------------------------------------------------------------------------


def longest_induced_path(G: Graph) -> int:
    """Maximum number of edges of an induced path (exhaustive DFS)."""
    if G.n > settings.induced_path_max_n:
        raise CapacityError(
            "longest_induced_path", f"n={G.n} exceeds induced_path_max_n={settings.induced_path_max_n}"
        )
    best = 0

    def grow(last: int, used: int, blocked: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        if best == G.n - 1:
            return
        # a new vertex must avoid the closed neighbourhoods of all but the last path vertex
        for w in vertices_of(G.adj[last - 1] & ~used & ~blocked):
            grow(w, used | bit(w), blocked | G.adj[last - 1] | bit(last), length + 1)

    for s in G.vertices:
        grow(s, bit(s), 0, 0)
    return best


# ---------------------------------------------------------------------------
# Indecomposable components
# ---------------------------------------------------------------------------


@dataclass
class Decomposition:
    r: int
    pieces: List[Tuple[int, ...]]
    isolated: List[int]
    glue_vertices: List[int]


def _glue_sides(G: Graph, v: int) -> Optional[Tuple[int, int]]:
    """The two sides of v when G splits at v into two parts with v free in both."""
    home = next(m for m in component_masks(G) if m & bit(v))
    parts = component_masks(G, home & ~bit(v))
    if len(parts) != 2:
        return None
    for part in parts:
        if not G.is_clique(G.adj[v - 1] & part):
            return None
    return parts[0], parts[1]


def indecomposable_components(G: Graph) -> Decomposition:
    """
    The unique splitting of G at vertices that are free on both sides.
    Isolated vertices are reported separately and are not counted in r.
    """
    sides = {v: s for v in G.vertices if (s := _glue_sides(G, v)) is not None}
    edges = G.edges()
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u in G.vertices:
        incident = [index[(min(u, w), max(u, w))] for w in G.neighbors(u)]
        nbrs = G.neighbors(u)
        for (a, wa), (b, wb) in combinations(zip(incident, nbrs), 2):
            if u in sides:
                left = sides[u][0]
                if bool(left & bit(wa)) != bool(left & bit(wb)):
                    continue
            parent[find(a)] = find(b)

    groups: Dict[int, int] = {}
    for e, i in index.items():
        groups[find(i)] = groups.get(find(i), 0) | bit(e[0]) | bit(e[1])
    pieces = sorted(tuple(vertices_of(m)) for m in groups.values())
    isolated = [v for v in G.vertices if G.adj[v - 1] == 0]
    return Decomposition(len(pieces), pieces, isolated, sorted(sides))


# ---------------------------------------------------------------------------
# Block graphs
# ---------------------------------------------------------------------------


@dataclass
class BlockClassification:
    is_block: bool
    blocks: List[Tuple[int, ...]]
    cm_by_vertex_rule: bool


def classify_block_graph(G: Graph) -> BlockClassification:
    blocks = sorted(tuple(sorted(b)) for b in nx.biconnected_components(G.to_networkx()))
    is_block = all(G.is_clique(mask_of(b)) for b in blocks)
    cm_rule = is_block and max(clique_membership(G).values(), default=0) <= 2
    return BlockClassification(is_block, blocks, cm_rule)
