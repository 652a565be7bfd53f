"""
Small graphs up to isomorphism.

A canonical form is the smallest adjacency code over all vertex orders
that respect a colour refinement (degree, then neighbour colours, until
stable). Graphs on n vertices are grown from those on n - 1 by adding a
vertex with every possible neighbourhood and keeping one per canonical form.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, List, Tuple

from beilab.services.graph import Graph, bit, is_connected

logger = logging.getLogger(__name__)


def refined_cells(G: Graph) -> List[List[int]]:
    """Vertex classes of the stable colour refinement, in an isomorphism-invariant order."""
    colour = {v: G.degree(v) for v in G.vertices}
    while True:
        signature = {v: (colour[v], tuple(sorted(colour[u] for u in G.neighbors(v)))) for v in G.vertices}
        ranks = {s: i for i, s in enumerate(sorted(set(signature.values())))}
        fresh = {v: ranks[signature[v]] for v in G.vertices}
        if len(set(fresh.values())) == len(set(colour.values())):
            colour = fresh
            break
        colour = fresh
    cells: List[List[int]] = [[] for _ in range(len(set(colour.values())))]
    for v in G.vertices:
        cells[colour[v]].append(v)
    return cells


def _code(G: Graph, order: Tuple[int, ...]) -> int:
    code = 0
    for a, b in combinations(range(len(order)), 2):
        code <<= 1
        if G.adj[order[a] - 1] & bit(order[b]):
            code |= 1
    return code


def canonical_order(G: Graph) -> Tuple[Tuple[int, ...], int]:
    best_order: Tuple[int, ...] = ()
    best = None
    for parts in product(*(permutations(cell) for cell in refined_cells(G))):
        order = tuple(v for part in parts for v in part)
        code = _code(G, order)
        if best is None or code < best:
            best, best_order = code, order
    return best_order, best


def canonical_form(G: Graph) -> Tuple[int, int]:
    """(n, adjacency code); equal exactly for isomorphic graphs."""
    return G.n, canonical_order(G)[1]


def canonical_graph(G: Graph) -> Graph:
    order, _ = canonical_order(G)
    labeling = [0] * G.n
    for pos, v in enumerate(order, start=1):
        labeling[v - 1] = pos
    return G.relabel(labeling)


def _extensions(G: Graph, connected: bool) -> Iterator[Graph]:
    n = G.n + 1
    base = G.edges()
    for mask in range(1 if connected else 0, 1 << G.n):
        yield Graph.from_edges(n, base + [(v, n) for v in G.vertices if mask & bit(v)])


@lru_cache(maxsize=None)
def _classes(n: int, connected: bool) -> Tuple[Graph, ...]:
    if n == 1:
        return (Graph.edgeless(1),)
    seen = {}
    for G in _classes(n - 1, connected):
        for H in _extensions(G, connected):
            key = canonical_form(H)
            if key not in seen:
                seen[key] = canonical_graph(H)
    graphs = tuple(seen[key] for key in sorted(seen, key=lambda k: (seen[k].edge_count(), k)))
    logger.debug("%d %sgraphs on %d vertices", len(graphs), "connected " if connected else "", n)
    return graphs


def graphs_up_to_isomorphism(n: int) -> List[Graph]:
    if n < 1:
        raise ValueError("n starts at 1")
    return list(_classes(n, False))


def labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def connected_graphs(n: int, reduce_isomorphism: bool = True) -> List[Graph]:
    """
    Connected graphs on n vertices; one per isomorphism class when
    reduce_isomorphism is set, otherwise every labelled graph.
    """
    if n < 1:
        raise ValueError("n starts at 1")
    if reduce_isomorphism:
        # removing a non-cut vertex keeps a graph connected, so connected classes grow from connected classes
        return list(_classes(n, True))
    return [G for G in labeled_graphs(n) if is_connected(G)]
