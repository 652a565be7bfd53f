"""`analyze`: per-graph invariant report, formulas against the oracle."""
from __future__ import annotations

import argparse
import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional

from beilab.errors import CapacityError, DomainError, VerificationError
from beilab.schema import Classification, CutSetRow, InvariantReport, KRow
from beilab.services import export
from beilab.services.bei import (
    binomial_edge_ideal,
    cm_closed,
    dimension_from_cut_sets,
    minimal_primes,
    powers_cm_prediction,
    symbolic_equals_ordinary,
    unmixed,
)
from beilab.services.formulas import depth_limit_closed, depth_powers_cm_closed, reg_powers_closed
from beilab.services.graph import (
    Graph,
    classify_block_graph,
    component_masks,
    cut_point_sets,
    forbidden_subgraph_scan,
    indecomposable_components,
    is_chordal,
    maximal_cliques,
    recognize_closed,
)
from beilab.services.oracle import betti_table_checked, depth_probe_generic_forms, hilbert_consistency
from beilab.services.polynomial import PrimeField, field_from_name, format_polynomial
from beilab.settings import settings

from .common import apply_overrides, common_options, emit_csv, emit_json, load_graphs

logger = logging.getLogger(__name__)


@contextmanager
def _stage(timing: Optional[Dict[str, float]], name: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        if timing is not None:
            timing[name] = round(timing.get(name, 0.0) + time.perf_counter() - start, 4)


def _classify(G: Graph, H: Optional[Graph], labeling: Optional[List[int]]) -> Classification:
    scan = forbidden_subgraph_scan(G)
    block = classify_block_graph(G)
    connected = len(component_masks(G)) == 1
    cm = None
    if H is not None:
        cm = cm_closed(H).cm
    elif block.is_block and connected:
        cm = block.cm_by_vertex_rule
    return Classification(
        chordal=is_chordal(G).chordal,
        claw_free=scan["claw"] is None,
        net_free=scan["net"] is None,
        tent_free=scan["tent"] is None,
        closed=H is not None,
        closed_labeling=labeling,
        block=block.is_block,
        unmixed=unmixed(G) if G.n <= settings.cut_set_max_n else None,
        cm=cm,
    )


def cmd_analyze(
    G: Graph,
    k_max: int = 2,
    with_oracle: bool = False,
    with_betti: bool = False,
    timing: bool = False,
) -> InvariantReport:
    """
    Classification, minimal primes, closed-form depth and regularity of
    J_G^k for k = 1..k_max and, with the oracle, the computed values next to
    them. A computed value contradicting a proven formula raises
    VerificationError.
    """
    if k_max < 1:
        raise DomainError("k_max starts at 1")
    with_oracle = with_oracle or with_betti
    clock: Optional[Dict[str, float]] = {} if timing else None
    field = field_from_name(settings.field)

    # 1) Classification
    with _stage(clock, "classification"):
        labeling = recognize_closed(G)
        H = G.relabel(labeling) if labeling is not None else None
        flags = _classify(G, H, labeling)

    report = InvariantReport(
        graph=str(G),
        n=G.n,
        edges=G.edge_count(),
        components=len(component_masks(G)),
        flags=flags,
        field=field.name,
        seed=settings.seed,
        oracle_field=PrimeField(settings.default_prime).name if with_oracle else None,
    )

    # 2) Primes and dimension
    with _stage(clock, "primes"):
        sets = cut_point_sets(G)
        report.cut_sets = [
            CutSetRow(W=list(w.W), components=[list(c) for c in w.components], c=w.c, height=w.height(G.n))
            for w in sets
        ]
        report.minimal_primes = [[format_polynomial(g) for g in p.generators] for p in minimal_primes(G, field)]
        report.dimension = dimension_from_cut_sets(G)
        report.maximal_cliques = [list(c) for c in maximal_cliques(G).cliques]

    # 3) Closed-graph formulas
    profile = None
    if H is not None:
        decomposition = indecomposable_components(H)
        report.indecomposable = decomposition.r
        report.depth_limit = depth_limit_closed(H)
        report.depth_limit_caveat = report.components > 1
        if flags.cm:
            profile = depth_powers_cm_closed(H, k_max)
            report.interval_forms = cm_closed(H).interval_forms

    # 4) Per-k rows
    J = binomial_edge_ideal(H if H is not None else G, field)
    initial = J.initial_ideal() if H is not None else None
    for k in range(1, k_max + 1):
        row = KRow(k=k, cm_prediction=powers_cm_prediction(G, k))
        if profile is not None:
            row.predicted_depth = profile.values[k]
        if H is not None:
            row.predicted_reg = reg_powers_closed(H, k)
        with _stage(clock, "symbolic"):
            try:
                row.symbolic_equals_ordinary = symbolic_equals_ordinary(G, k, field)
            except CapacityError as e:
                logger.info("symbolic power check skipped at k=%d: %s", k, e)
        if with_oracle:
            with _stage(clock, "oracle"):
                power = J.power(k)
                table = betti_table_checked(power, seed=settings.seed)
                if not hilbert_consistency(power.change_field(PrimeField(settings.default_prime)), table):
                    raise VerificationError(f"Betti table of J^{k} disagrees with its Hilbert series")
                row.oracle_depth, row.oracle_reg = table.depth, table.reg
                if with_betti:
                    report.betti[f"J^{k}"] = table
                if initial is not None:
                    itable = betti_table_checked(initial.power(k), seed=settings.seed)
                    row.initial_depth, row.initial_reg = itable.depth, itable.reg
                    if with_betti:
                        report.betti[f"in(J)^{k}"] = itable
            with _stage(clock, "generic_forms"):
                row.probe_depth = depth_probe_generic_forms(J.power(k), seed=settings.seed)
            _cross_check(G, row)
        report.rows.append(row)

    report.timing = clock
    return report


def _cross_check(G: Graph, row: KRow) -> None:
    """Oracle values against the proven formulas and the second depth witness."""
    problems = []
    if row.probe_depth != row.oracle_depth:
        problems.append(f"generic-forms depth {row.probe_depth} vs Betti depth {row.oracle_depth}")
    for label, predicted, computed in (
        ("depth", row.predicted_depth, row.oracle_depth),
        ("depth of in(J)", row.predicted_depth, row.initial_depth),
        ("reg", row.predicted_reg, row.oracle_reg),
        ("reg of in(J)", row.predicted_reg, row.initial_reg),
    ):
        if predicted is not None and computed is not None and predicted != computed:
            problems.append(f"{label}: formula {predicted}, oracle {computed}")
    if problems:
        raise VerificationError(f"{G} at k={row.k}: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def render_text(report: InvariantReport) -> str:
    f = report.flags
    lines = [
        f"graph: {report.graph}  (n={report.n}, edges={report.edges}, components={report.components})",
        f"chordal={f.chordal} claw_free={f.claw_free} net_free={f.net_free} tent_free={f.tent_free}",
        f"closed={f.closed} block={f.block} unmixed={f.unmixed} cm={f.cm}",
    ]
    if f.closed_labeling is not None:
        lines.append(f"closed labeling: {f.closed_labeling}")
    lines.append(f"cut-point sets: {[row.W for row in report.cut_sets]}")
    lines.append(f"dimension: {report.dimension}")
    lines.append(f"maximal cliques: {report.maximal_cliques}")
    if report.interval_forms is not None:
        lines.append(f"interval forms: {report.interval_forms}")
    if report.depth_limit is not None:
        caveat = " (disconnected: r + 2c)" if report.depth_limit_caveat else ""
        lines.append(f"indecomposable pieces: {report.indecomposable}, depth limit: {report.depth_limit}{caveat}")
    header = ["k", "depth", "oracle", "in(J)", "forms", "reg", "oracle", "in(J)", "J^(k)=J^k", "CM"]
    lines.append("  ".join(f"{h:>9}" for h in header))
    for r in report.rows:
        cells = [
            r.k,
            r.predicted_depth,
            r.oracle_depth,
            r.initial_depth,
            r.probe_depth,
            r.predicted_reg,
            r.oracle_reg,
            r.initial_reg,
            r.symbolic_equals_ordinary,
            r.cm_prediction,
        ]
        lines.append("  ".join(f"{'-' if c is None else str(c):>9}" for c in cells))
    for name, table in report.betti.items():
        lines.append(f"Betti table of S/{name} over {table.field}:")
        lines.append(table.triangle())
    if report.timing:
        lines.append("timing: " + ", ".join(f"{k}={v}s" for k, v in report.timing.items()))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# CLI wiring
# ---------------------------------------------------------------------------


def register(subparsers) -> None:
    p = subparsers.add_parser("analyze", parents=[common_options()], help="invariant report per graph")
    p.add_argument("graphs", nargs="+", help="named graph, file, '-' or inline edge list")
    p.add_argument("--oracle", action="store_true", help="compute depth and regularity from Betti tables")
    p.add_argument("--with-betti", action="store_true", help="include Betti tables (implies --oracle)")
    p.add_argument("--timing", action="store_true", help="record wall-clock time per stage")
    p.add_argument("--export", metavar="DIR", default=None, help="write CSV + XLSX summaries to DIR")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    apply_overrides(args)
    reports = [
        cmd_analyze(G, args.k_max, with_oracle=args.oracle, with_betti=args.with_betti, timing=args.timing)
        for G in load_graphs(args.graphs)
    ]
    if args.format == "json":
        emit_json(reports)
    elif args.format == "csv":
        emit_csv(export.report_frame(reports))
    else:
        print("\n\n".join(render_text(r) for r in reports))
    if args.export:
        export.export_reports(reports, args.export)
    return 0
