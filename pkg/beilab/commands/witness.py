"""`witness`: an element of J^(k) outside J^k from an induced net."""
from __future__ import annotations

import argparse
import logging
from typing import Optional

from beilab.errors import DomainError, VerificationError
from beilab.schema import WitnessCertificate
from beilab.services.bei import net_witness_family, witness_memberships
from beilab.services.graph import PATTERNS, Graph, classify_block_graph, find_induced
from beilab.services.polynomial import field_from_name, format_polynomial
from beilab.settings import settings

from .common import apply_overrides, common_options, load_graph

logger = logging.getLogger(__name__)


def cmd_witness(G: Graph, k: int) -> Optional[WitnessCertificate]:
    """
    None when G has no induced net. On block graphs a witness that is not
    in J^(k) \\ J^k raises VerificationError; elsewhere the verdicts are
    reported as computed.
    """
    if k < 2:
        raise DomainError("witnesses start at k = 2")
    embedding = find_induced(G, PATTERNS["net"])
    if embedding is None:
        return None
    field = field_from_name(settings.field)
    g = net_witness_family(G, embedding, k, field)
    symbolic, ordinary = witness_memberships(G, g, k)
    if classify_block_graph(G).is_block and (not symbolic or ordinary):
        raise VerificationError(f"net witness on {G} at k={k}: symbolic={symbolic}, ordinary={ordinary}")
    return WitnessCertificate(
        graph=str(G),
        k=k,
        embedding=embedding,
        polynomial=format_polynomial(g),
        symbolic=symbolic,
        ordinary=ordinary,
        field=field.name,
    )


def register(subparsers) -> None:
    p = subparsers.add_parser("witness", parents=[common_options()], help="certificate for J^(k) != J^k")
    p.add_argument("graph")
    p.add_argument("-k", type=int, default=2)
    p.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    apply_overrides(args)
    cert = cmd_witness(load_graph(args.graph), args.k)
    if cert is None:
        print("none")
    elif args.format == "json":
        print(cert.model_dump_json())
    else:
        print(f"graph: {cert.graph}")
        print(f"net embedding: {cert.embedding}")
        print(f"g = {cert.polynomial}")
        print(f"in J^({cert.k}): {cert.symbolic}")
        print(f"in J^{cert.k}: {cert.ordinary}")
    return 0
