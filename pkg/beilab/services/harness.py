"""
Verification selectors run over enumerated graphs.

Each selector looks at one graph and returns zero or more Verdicts. A
theorem verdict with ok=False is a counterexample to a proven statement
(a bug); evidence verdicts only feed tallies. Selectors that do not apply
to a graph return an empty list.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from beilab.errors import CapacityError, DomainError
from beilab.schema import EnumerationRun, Verdict
from beilab.services.bei import (
    binomial_edge_ideal,
    cm_closed,
    complete_graph_regular_sequence,
    dimension_from_cut_sets,
    is_regular_sequence,
    minimal_primes,
    net_witness_family,
    powers_cm_prediction,
    symbolic_equals_ordinary,
    symbolic_power,
    unmixed,
    witness_memberships,
)
from beilab.services.catalog import connected_graphs
from beilab.services.formulas import (
    depth_limit_closed,
    depth_powers_cm_closed,
    persistence_check,
    reg_powers_closed,
)
from beilab.services.graph import (
    Graph,
    classify_block_graph,
    forbidden_subgraph_scan,
    indecomposable_components,
    is_chordal,
    is_closed_labeling,
    is_connected,
    maximal_cliques,
    recognize_closed,
)
from beilab.services.groebner import buchberger, is_groebner_basis
from beilab.services.ideal import Ideal, monomial_intersection
from beilab.services.oracle import betti_table
from beilab.services.polynomial import field_from_name
from beilab.settings import settings

logger = logging.getLogger(__name__)

Check = Callable[[Graph, int], List[Verdict]]


@dataclass(frozen=True)
class Selector:
    name: str
    kind: str
    budget: str
    check: Check

    def max_n(self) -> int:
        return getattr(settings, self.budget)


SELECTORS: Dict[str, Selector] = {}


def selector(name: str, kind: str, budget: str):
    def register(fn: Check) -> Check:
        SELECTORS[name] = Selector(name, kind, budget, fn)
        return fn

    return register


def _verdict(name: str, G: Graph, ok: Optional[bool], kind: Optional[str] = None, **details) -> Verdict:
    return Verdict(selector=name, graph=str(G), kind=kind or SELECTORS[name].kind, ok=ok, details=details)


def _closed_form(G: Graph) -> Optional[Graph]:
    labeling = recognize_closed(G)
    return None if labeling is None else G.relabel(labeling)


def _field():
    return field_from_name(settings.field)


# ---------------------------------------------------------------------------
# Ideals, primes, Groebner bases
# ---------------------------------------------------------------------------


@selector("classification", "theorem", "classification_max_n")
def check_classification(G: Graph, k_max: int) -> List[Verdict]:
    """closed <=> chordal, claw-, net- and tent-free; for block graphs CM rule <=> unmixed."""
    scan = forbidden_subgraph_scan(G)
    chordal = is_chordal(G).chordal
    H = _closed_form(G)
    free = chordal and all(e is None for e in scan.values())
    ok = free == (H is not None) and (H is None or is_closed_labeling(H))
    block = classify_block_graph(G)
    block_ok = None
    if block.is_block and is_connected(G):
        block_ok = block.cm_by_vertex_rule == unmixed(G)
        ok = ok and block_ok
    return [
        _verdict(
            "classification",
            G,
            ok,
            chordal=chordal,
            forbidden={k: v is not None for k, v in scan.items()},
            closed=H is not None,
            block=block.is_block,
            block_rule_matches=block_ok,
        )
    ]


@selector("closed_gb", "theorem", "closed_gb_max_n")
def check_closed_gb(G: Graph, k_max: int) -> List[Verdict]:
    """
    The f_ij are a Groebner basis exactly under closed labelings. Under a
    closed labeling the reduced basis from `buchberger` must be the f_ij
    themselves; otherwise the S-pair criterion must fail.
    """
    closed_labeling = is_closed_labeling(G)
    if closed_labeling:
        identity_gb = _reduces_to_generators(G)
    else:
        identity_gb = is_groebner_basis(binomial_edge_ideal(G).generators)
    ok = identity_gb == closed_labeling
    H = _closed_form(G)
    relabeled_gb = None
    if H is not None:
        relabeled_gb = _reduces_to_generators(H)
        ok = ok and relabeled_gb
    return [_verdict("closed_gb", G, ok, identity_gb=identity_gb, closed=H is not None, relabeled_gb=relabeled_gb)]


def _reduces_to_generators(G: Graph) -> bool:
    # the f_ij are monic with lead x_i y_j, so a reduced basis equal to them is the same set
    gens = binomial_edge_ideal(G).generators
    return set(buchberger(gens)) == set(gens)


@selector("dimension", "theorem", "groebner_max_n")
def check_dimension(G: Graph, k_max: int) -> List[Verdict]:
    hilbert = binomial_edge_ideal(G, _field()).krull_dimension()
    predicted = dimension_from_cut_sets(G)
    return [_verdict("dimension", G, hilbert == predicted, hilbert=hilbert, cut_sets=predicted)]


@selector("initial_primes", "theorem", "groebner_max_n")
def check_initial_intersection(G: Graph, k_max: int) -> List[Verdict]:
    """in(J_G) is the intersection of the in(P_W)."""
    J = binomial_edge_ideal(G, _field())
    leads = [p.ideal().leading_monomials() for p in minimal_primes(G, _field())]
    meet = Ideal.from_monomials(J.ring, reduce(monomial_intersection, leads))
    return [_verdict("initial_primes", G, meet.equals(J.initial_ideal()), primes=len(leads))]


@selector("decomposition", "theorem", "symbolic_max_n")
def check_decomposition(G: Graph, k_max: int) -> List[Verdict]:
    """J_G is the intersection of its minimal primes."""
    J = binomial_edge_ideal(G, _field())
    return [_verdict("decomposition", G, symbolic_power(G, 1, _field()).equals(J))]


@selector("eq3", "theorem", "groebner_max_n")
def check_initial_powers(G: Graph, k_max: int) -> List[Verdict]:
    """in(J^k) = (in J)^k for closed G."""
    H = _closed_form(G)
    if H is None:
        return []
    J = binomial_edge_ideal(H, _field())
    initial = J.initial_ideal()
    agree = {k: J.power(k).initial_ideal().equals(initial.power(k)) for k in range(1, k_max + 1)}
    return [_verdict("eq3", G, all(agree.values()), by_k=agree)]


@selector("symbolic_closed", "theorem", "symbolic_max_n")
def check_symbolic_powers(G: Graph, k_max: int) -> List[Verdict]:
    """J^(k) = J^k for closed G."""
    H = _closed_form(G)
    if H is None:
        return []
    top = min(k_max, settings.symbolic_max_k)
    agree = {k: symbolic_equals_ordinary(H, k, _field()) for k in range(1, top + 1)}
    return [_verdict("symbolic_closed", G, all(agree.values()), by_k=agree)]


# ---------------------------------------------------------------------------
# Depth of powers
# ---------------------------------------------------------------------------


def _cm_closed_form(G: Graph) -> Optional[Graph]:
    H = _closed_form(G)
    if H is None or not cm_closed(H).cm:
        return None
    return H


def _oracle_depths(G: Graph, k_max: int, initial: bool = False) -> Dict[int, int]:
    J = binomial_edge_ideal(G)
    base = J.initial_ideal() if initial else J
    return {k: betti_table(base.power(k)).depth for k in range(1, k_max + 1)}


@selector("depth", "theorem", "betti_max_n")
def check_depth(G: Graph, k_max: int) -> List[Verdict]:
    """Oracle depths of J^k and (in J)^k match the clique-dimension formula."""
    H = _cm_closed_form(G)
    if H is None:
        return []
    predicted = depth_powers_cm_closed(H, k_max).values
    oracle = _oracle_depths(H, k_max)
    initial = _oracle_depths(H, k_max, initial=True)
    ok = all(predicted[k] == oracle[k] == initial[k] for k in oracle)
    return [_verdict("depth", G, ok, predicted={k: predicted[k] for k in oracle}, oracle=oracle, initial=initial)]


@selector("complete_depth", "theorem", "betti_max_n")
def check_complete_depth(G: Graph, k_max: int) -> List[Verdict]:
    """depth S/J_{K_n}^k = 3 for k >= 2, with an explicit regular sequence."""
    if G.n < 3 or not G.is_complete():
        return []
    top = max(k_max, 2)
    oracle = {k: v for k, v in _oracle_depths(G, top).items() if k >= 2}
    initial = {k: v for k, v in _oracle_depths(G, top, initial=True).items() if k >= 2}
    forms = complete_graph_regular_sequence(G.n, _field())
    J = binomial_edge_ideal(G, _field())
    regular = {k: is_regular_sequence(J.power(k), forms) for k in oracle}
    ok = all(v == 3 for v in oracle.values()) and all(v == 3 for v in initial.values()) and all(regular.values())
    return [_verdict("complete_depth", G, ok, oracle=oracle, initial=initial, regular_sequence=regular)]


@selector("depth_limit", "theorem", "classification_max_n")
def check_depth_limit(G: Graph, k_max: int) -> List[Verdict]:
    """r_ind + 2c agrees with the stable value of the depth formula."""
    H = _cm_closed_form(G)
    if H is None:
        return []
    limit = depth_limit_closed(H)
    profile = depth_powers_cm_closed(H)
    pieces = indecomposable_components(H).r
    ok = limit == profile.limit and pieces == profile.r
    return [_verdict("depth_limit", G, ok, limit=limit, formula_limit=profile.limit, pieces=pieces)]


@selector("persistence", "theorem", "persistence_max_n")
def check_persistence(G: Graph, k_max: int) -> List[Verdict]:
    H = _closed_form(G)
    if H is None:
        return []
    top = min(k_max, settings.persistence_max_k)
    agree = {k: persistence_check(H, k) for k in range(1, top + 1)}
    return [_verdict("persistence", G, all(agree.values()), by_k=agree)]


@selector("depth_decreasing", "evidence", "betti_max_n")
def check_depth_non_increasing(G: Graph, k_max: int) -> List[Verdict]:
    """Records oracle depths of J^k for closed, non-CM G and whether they decrease."""
    H = _closed_form(G)
    if H is None or cm_closed(H).cm:
        return []
    depths = _oracle_depths(H, k_max)
    values = [depths[k] for k in sorted(depths)]
    return [_verdict("depth_decreasing", G, all(a >= b for a, b in zip(values, values[1:])), depths=depths)]


@selector("leaf", "evidence", "betti_max_n")
def check_leaf(G: Graph, k_max: int) -> List[Verdict]:
    """depth S/J^{k+1} <= depth S/J^k when the first maximal clique is {1, 2}."""
    H = _closed_form(G)
    if H is None or not is_connected(H) or H.n < 2:
        return []
    if maximal_cliques(H).cliques[0] != (1, 2):
        return []
    depths = _oracle_depths(H, k_max + 1)
    ok = all(depths[k + 1] <= depths[k] for k in range(1, k_max + 1))
    return [_verdict("leaf", G, ok, depths=depths)]


# ---------------------------------------------------------------------------
# Regularity of powers
# ---------------------------------------------------------------------------


@selector("regularity", "theorem", "betti_max_n")
def check_regularity(G: Graph, k_max: int) -> List[Verdict]:
    H = _closed_form(G)
    if H is None:
        return []
    J = binomial_edge_ideal(H)
    initial = J.initial_ideal()
    predicted, oracle, from_initial = {}, {}, {}
    for k in range(1, k_max + 1):
        predicted[k] = reg_powers_closed(H, k)
        oracle[k] = betti_table(J.power(k)).reg
        from_initial[k] = betti_table(initial.power(k)).reg
    ok = all(predicted[k] == oracle[k] == from_initial[k] for k in predicted)
    return [_verdict("regularity", G, ok, predicted=predicted, oracle=oracle, initial=from_initial)]


# ---------------------------------------------------------------------------
# Block graphs, symbolic squares, Betti tables
# ---------------------------------------------------------------------------


def _cm_block(G: Graph) -> bool:
    block = classify_block_graph(G)
    return block.is_block and block.cm_by_vertex_rule and is_connected(G)


@selector("net_block", "theorem", "symbolic_max_n")
def check_net_free_block(G: Graph, k_max: int) -> List[Verdict]:
    """For CM block graphs: net-free <=> J^(2) = J^2, with the witness when a net is present."""
    if not _cm_block(G):
        return []
    embedding = forbidden_subgraph_scan(G)["net"]
    equal = symbolic_equals_ordinary(G, 2, _field())
    ok = (embedding is None) == equal
    witness = None
    if embedding is not None:
        g = net_witness_family(G, embedding, 2, _field())
        witness = witness_memberships(G, g, 2)
        ok = ok and witness == (True, False)
    return [_verdict("net_block", G, ok, net=embedding, symbolic_equals_ordinary=equal, witness=witness)]


@selector("cm_powers", "theorem", "betti_max_n")
def check_powers_cm(G: Graph, k_max: int) -> List[Verdict]:
    """J^2 is CM iff every component is a path (closed graphs) or G is a path (block graphs)."""
    prediction = powers_cm_prediction(G, 2)
    if prediction is None:
        return []
    J = binomial_edge_ideal(G)
    depth = betti_table(J.power(2)).depth
    dimension = J.krull_dimension()
    return [_verdict("cm_powers", G, (depth == dimension) == prediction, predicted=prediction, depth=depth, dimension=dimension)]


@selector("q4", "evidence", "symbolic_max_n")
def check_net_free_equivalence(G: Graph, k_max: int) -> List[Verdict]:
    """net-free <=> J^(2) = J^2; proven for closed graphs and CM block graphs."""
    net_free = forbidden_subgraph_scan(G)["net"] is None
    equal = symbolic_equals_ordinary(G, 2, _field())
    proven = recognize_closed(G) is not None or _cm_block(G)
    return [
        _verdict(
            "q4",
            G,
            net_free == equal,
            kind="theorem" if proven else "evidence",
            net_free=net_free,
            symbolic_equals_ordinary=equal,
        )
    ]


@selector("conj52", "evidence", "betti_max_n")
def check_betti_initial(G: Graph, k_max: int) -> List[Verdict]:
    """
    Betti tables of J^k and (in J)^k for closed G; the CM case k = 1 is proven.
    Both sides get full Koszul homology so the comparison does not reuse in(J).
    """
    H = _closed_form(G)
    if H is None:
        return []
    J = binomial_edge_ideal(H)
    initial = J.initial_ideal()
    cm = cm_closed(H).cm
    out = []
    for k in range(1, k_max + 1):
        same = betti_table(J.power(k), parity_shortcut=False).same_numbers(
            betti_table(initial.power(k), parity_shortcut=False)
        )
        out.append(_verdict("conj52", G, same, kind="theorem" if cm and k == 1 else "evidence", k=k, cm=cm))
    return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def check_graph(G: Graph, names: Sequence[str], k_max: int) -> Tuple[List[Verdict], List[str]]:
    """Verdicts of the named selectors on G, plus the selectors skipped for capacity."""
    verdicts: List[Verdict] = []
    skipped: List[str] = []
    for name in names:
        try:
            verdicts += SELECTORS[name].check(G, k_max)
        except CapacityError as e:
            logger.warning("%s skipped on %s: %s", name, G, e)
            skipped.append(f"{name} on {G}: {e}")
    return verdicts, skipped


def _check_task(task: Tuple[int, Tuple[Tuple[int, int], ...], Tuple[str, ...], int]) -> Tuple[List[Verdict], List[str]]:
    n, edges, names, k_max = task
    return check_graph(Graph.from_edges(n, edges), names, k_max)


def _resolve(names: Sequence[str]) -> List[str]:
    if not names or list(names) == ["all"]:
        return list(SELECTORS)
    unknown = [s for s in names if s not in SELECTORS]
    if unknown:
        raise DomainError(f"unknown selector(s) {', '.join(unknown)}; choose from {', '.join(SELECTORS)}")
    return list(dict.fromkeys(names))


def run_enumeration(
    selectors: Sequence[str],
    n_max: int,
    n_min: int = 1,
    k_max: int = 2,
    reduce_isomorphism: bool = True,
    budget_seconds: Optional[float] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> EnumerationRun:
    """
    Run the selected checks over connected graphs with n_min <= n <= n_max.
    Selectors are skipped above their vertex budget; a time budget stops the
    run early. Both are recorded in `truncated`.
    """
    if n_min < 1 or n_max < n_min:
        raise DomainError("need 1 <= n_min <= n_max")
    if k_max < 1:
        raise DomainError("k_max starts at 1")
    names = _resolve(selectors)
    workers = settings.workers if workers is None else workers
    run = EnumerationRun(
        n_min=n_min,
        n_max=n_max,
        reduce_isomorphism=reduce_isomorphism,
        selectors=names,
        k_max=k_max,
        field=settings.field,
        seed=settings.seed,
    )

    tasks = []
    for n in range(n_min, n_max + 1):
        active = tuple(s for s in names if n <= SELECTORS[s].max_n())
        for s in names:
            if s not in active:
                run.truncated.append(f"{s}: n={n} exceeds {SELECTORS[s].budget}={SELECTORS[s].max_n()}")
        if not active:
            continue
        for G in connected_graphs(n, reduce_isomorphism):
            tasks.append((n, tuple(G.edges()), active, k_max))
    logger.info("enumerating %d graphs with %s", len(tasks), ", ".join(names))

    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    results: List[Optional[Tuple[List[Verdict], List[str]]]] = [None] * len(tasks)
    bar = tqdm(total=len(tasks), disable=not progress, desc="graphs")
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        expired = False
        try:
            futures = [pool.submit(_check_task, t) for t in tasks]
            for idx, fut in enumerate(futures):
                remaining = None if deadline is None else deadline - time.monotonic()
                try:
                    results[idx] = fut.result(timeout=None if remaining is None else max(remaining, 0.0))
                except FutureTimeout:
                    expired = True
                    break
                bar.update()
        finally:
            # a graph still running past the deadline is abandoned, not awaited
            pool.shutdown(wait=not expired, cancel_futures=True)
    else:
        for idx, task in enumerate(tasks):
            if deadline is not None and time.monotonic() > deadline:
                break
            results[idx] = _check_task(task)
            bar.update()
    bar.close()

    done = [r for r in results if r is not None]
    run.graphs_checked = len(done)
    for verdicts, skipped in done:
        run.truncated += skipped
        run.verdicts += len(verdicts)
        for v in verdicts:
            if v.kind == "theorem" and v.ok is False:
                run.counterexamples.append(v)
            elif v.kind == "evidence":
                tally = run.evidence.setdefault(v.selector, {"agree": 0, "disagree": 0})
                tally["agree" if v.ok else "disagree"] += 1
    if len(done) < len(tasks):
        run.truncated.append(f"time budget of {budget_seconds}s reached after {len(done)} of {len(tasks)} graphs")
    return run


def verdict_kinds(verdicts: Sequence[Verdict]) -> set:
    """Distinct (selector, kind, ok) outcomes, ignoring multiplicity."""
    return {(v.selector, v.kind, v.ok) for v in verdicts}
