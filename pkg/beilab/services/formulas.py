"""
Closed-form depth and regularity of powers of binomial edge ideals,
computed from graph combinatorics alone. The persistence and
initial-ideal monotonicity checks at the bottom do compute with ideals.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

from beilab.errors import CapacityError, DomainError
from beilab.schema import DepthProfile, RegularityProfile
from beilab.services.bei import binomial_edge_ideal, cm_closed
from beilab.services.graph import (
    Graph,
    component_masks,
    indecomposable_components,
    is_closed_labeling,
    longest_induced_path,
    recognize_closed,
    to_edge_list,
    vertices_of,
)
from beilab.services.oracle import betti_table
from beilab.settings import settings

logger = logging.getLogger(__name__)


def _closed_relabel(G: Graph) -> Graph:
    if is_closed_labeling(G):
        return G
    labeling = recognize_closed(G)
    if labeling is None:
        raise DomainError("graph is not closed")
    return G.relabel(labeling)


def clique_dimensions(G: Graph) -> Tuple[List[int], int]:
    """(d sorted descending, c) for a Cohen-Macaulay closed graph."""
    H = _closed_relabel(G)
    result = cm_closed(H)
    if not result.cm:
        raise DomainError("depth formulas need a Cohen-Macaulay closed graph")
    d = []
    for chain in result.interval_forms:
        d += [b - a for a, b in zip(chain, chain[1:])]
    return sorted(d, reverse=True), len(result.interval_forms)


def depth_powers_cm_closed(G: Graph, k_max: Optional[int] = None) -> DepthProfile:
    """
    depth S/J^k = n - (d_1 + ... + d_{k-1}) + k + c - 1 for k <= r and
    r + 2c beyond, with d the clique dimensions sorted descending.
    """
    d, c = clique_dimensions(G)
    r = len(d)
    top = max(k_max or 0, r + 1)
    values = {}
    for k in range(1, top + 1):
        values[k] = G.n - sum(d[: k - 1]) + k + c - 1 if k <= r else r + 2 * c
    return DepthProfile(graph=to_edge_list(G, header=False), c=c, r=r, d=d, values=values, limit=r + 2 * c)


def depth_powers_disjoint_cliques(d: Sequence[int], k: int) -> int:
    """depth of S/J^k for a disjoint union of r cliques of dimensions d."""
    if k < 1:
        raise ValueError("k starts at 1")
    dims = sorted(d, reverse=True)
    if not dims or dims[-1] < 1:
        raise DomainError("clique dimensions must be positive")
    r = len(dims)
    if k > r:
        return 3 * r
    return sum(dims[k - 1:]) + 2 * r + k - 1


def depth_limit_closed(G: Graph) -> int:
    """r_ind + 2c, where r_ind counts the indecomposable pieces carrying edges."""
    H = _closed_relabel(G)
    c = len(component_masks(H))
    if c > 1:
        logger.info("depth limit for a disconnected graph uses r + 2c")
    return indecomposable_components(H).r + 2 * c


def component_path_lengths(G: Graph) -> List[int]:
    out = []
    for m in component_masks(G):
        sub, _ = G.induced(vertices_of(m))
        out.append(longest_induced_path(sub))
    return out


def reg_powers_closed(G: Graph, k: int) -> int:
    """reg S/J^k = l_1 + ... + l_c + 2(k - 1), l_i the longest induced path per component."""
    if k < 1:
        raise ValueError("k starts at 1")
    _closed_relabel(G)
    if G.edge_count() == 0:
        return 0
    return sum(component_path_lengths(G)) + 2 * (k - 1)


def regularity_profile(G: Graph, k_max: int) -> RegularityProfile:
    _closed_relabel(G)
    ell = component_path_lengths(G)
    values = {k: reg_powers_closed(G, k) for k in range(1, k_max + 1)}
    return RegularityProfile(graph=to_edge_list(G, header=False), ell=ell, values=values)


def persistence_check(G: Graph, k: int) -> bool:
    """(J^{k+1} : J) == J^k."""
    if G.n > settings.persistence_max_n or k > settings.persistence_max_k:
        raise CapacityError(
            "persistence",
            f"n={G.n}, k={k} exceeds budget n<={settings.persistence_max_n}, k<={settings.persistence_max_k}",
        )
    J = binomial_edge_ideal(G)
    if J.is_zero():
        return True
    colon = J.power(k + 1).quotient_ideal(J)
    return colon.equals(J.power(k))


def depth_monotone_initial(G: Graph, k_max: int) -> bool:
    """Oracle depths of S/(in J)^k are non-increasing for k = 1..k_max."""
    H = _closed_relabel(G)
    initial = binomial_edge_ideal(H).initial_ideal()
    depths = [betti_table(initial.power(k)).depth for k in range(1, k_max + 1)]
    logger.debug("initial-ideal depths for %s: %s", to_edge_list(G, header=False), depths)
    return all(a >= b for a, b in zip(depths, depths[1:]))
