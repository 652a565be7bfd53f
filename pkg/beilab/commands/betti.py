"""`betti`: graded Betti table of S/J_G^k, S/(in J_G)^k or an ideal read from JSON."""
from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Optional

from beilab.errors import DomainError, VerificationError
from beilab.schema import BettiTable
from beilab.services.bei import binomial_edge_ideal
from beilab.services.graph import Graph, recognize_closed
from beilab.services.ideal import Ideal
from beilab.services.oracle import betti_table, betti_table_checked, hilbert_consistency
from beilab.services.polynomial import PrimeField, field_from_name
from beilab.settings import settings

from .common import apply_overrides, common_options, load_graph

logger = logging.getLogger(__name__)


def graph_ideal(G: Graph, k: int = 1, initial: bool = False) -> Ideal:
    """J_G^k, or (in J_G)^k taken in a closed labeling when G is closed."""
    if k < 1:
        raise DomainError("powers start at k = 1")
    labeling = recognize_closed(G)
    H = G.relabel(labeling) if labeling is not None else G
    J = binomial_edge_ideal(H, field_from_name(settings.field))
    if initial:
        J = J.initial_ideal()
    return J.power(k)


def cmd_betti(
    I: Ideal,
    prime: Optional[int] = None,
    checked: bool = False,
    degree_bound: Optional[int] = None,
) -> BettiTable:
    if checked:
        table = betti_table_checked(I, degree_bound=degree_bound, seed=settings.seed)
    else:
        field = PrimeField(prime or settings.default_prime)
        table = betti_table(I, degree_bound=degree_bound, field=field, seed=settings.seed)
    if not table.truncated and not hilbert_consistency(I, table):
        raise VerificationError("Betti table disagrees with the Hilbert series")
    return table


def register(subparsers) -> None:
    p = subparsers.add_parser("betti", parents=[common_options()], help="graded Betti table")
    p.add_argument("graph", nargs="?", help="graph source (omit with --ideal)")
    p.add_argument("--ideal", metavar="FILE", help='ideal as JSON {"n": .., "generators": [..]}')
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--initial", action="store_true", help="use the lex initial ideal")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--checked", action="store_true", help="two primes, falling back to QQ on disagreement")
    p.add_argument("--degree-bound", type=int, default=None)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    apply_overrides(args)
    if args.ideal:
        I = Ideal.from_json(Path(args.ideal).read_text())
        if args.initial:
            I = I.initial_ideal()
        I = I.power(args.power)
    elif args.graph:
        I = graph_ideal(load_graph(args.graph), args.power, args.initial)
    else:
        raise DomainError("give a graph or --ideal FILE")
    table = cmd_betti(I, prime=args.prime, checked=args.checked, degree_bound=args.degree_bound)
    if args.format == "json":
        print(table.model_dump_json())
    else:
        print(table.triangle())
        print(f"pd={table.pd} depth={table.depth} reg={table.reg} field={table.field} grading={table.grading}")
        if table.truncated:
            print(f"truncated at degree {table.degree_bound}")
    return 0
