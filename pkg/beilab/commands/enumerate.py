"""`enumerate`: run verification selectors over all small connected graphs."""
from __future__ import annotations

import argparse
import logging
from typing import Optional, Sequence

from beilab.schema import EnumerationRun
from beilab.services import export
from beilab.services.harness import SELECTORS, run_enumeration
from beilab.settings import settings

from .common import apply_overrides, common_options, emit_csv

logger = logging.getLogger(__name__)


def cmd_enumerate(
    selectors: Sequence[str],
    n_max: int,
    n_min: int = 1,
    k_max: int = 2,
    reduce_isomorphism: bool = True,
    budget_seconds: Optional[float] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> EnumerationRun:
    return run_enumeration(
        selectors,
        n_max=n_max,
        n_min=n_min,
        k_max=k_max,
        reduce_isomorphism=reduce_isomorphism,
        budget_seconds=budget_seconds,
        workers=workers,
        progress=progress,
    )


def render_text(run: EnumerationRun) -> str:
    lines = [
        f"n={run.n_min}..{run.n_max}, k_max={run.k_max}, isomorphism reduction={run.reduce_isomorphism}",
        f"graphs checked: {run.graphs_checked}, verdicts: {run.verdicts}",
    ]
    for name in run.selectors:
        bad = [v for v in run.counterexamples if v.selector == name]
        tally = run.evidence.get(name)
        line = f"  {name:<15} {SELECTORS[name].kind:<8} counterexamples={len(bad)}"
        if tally:
            line += f" evidence agree={tally['agree']} disagree={tally['disagree']}"
        lines.append(line)
    for v in run.counterexamples:
        lines.append(f"COUNTEREXAMPLE {v.selector} on {v.graph}: {v.details}")
    for note in run.truncated:
        lines.append(f"truncated: {note}")
    return "\n".join(lines)


def register(subparsers) -> None:
    p = subparsers.add_parser("enumerate", parents=[common_options()], help="exhaustive verification harness")
    p.add_argument("selectors", nargs="*", default=["all"], help=f"any of: {', '.join(SELECTORS)}")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--labeled", action="store_true", help="every labelled graph instead of one per isomorphism class")
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--progress", action="store_true")
    p.add_argument("--export", metavar="DIR", nargs="?", const=settings.export_dir, default=None)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    apply_overrides(args)
    result = cmd_enumerate(
        args.selectors,
        n_max=args.n_max,
        n_min=args.n_min,
        k_max=args.k_max,
        reduce_isomorphism=not args.labeled,
        budget_seconds=args.budget_seconds,
        workers=args.workers,
        progress=args.progress,
    )
    if args.format == "json":
        print(result.model_dump_json())
    elif args.format == "csv":
        emit_csv(export.run_frame(result))
    else:
        print(render_text(result))
    if args.export:
        export.export_run(result, args.export)
    # proven statements must hold on every graph
    return 2 if result.counterexamples else 0
