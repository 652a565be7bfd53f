"""Helpers shared by the command modules: graph sources, output, overrides."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Iterable, List

import pandas as pd
from pydantic import BaseModel

from beilab.services.graph import Graph, named_graph, parse_graph
from beilab.settings import settings

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "csv")


def load_graph(source: str) -> Graph:
    """
    A named graph (K4, P5, net, ...), "-" for stdin, a file path, or an
    inline edge list with ';' between edges ("1 2; 2 3") or graph6 record.
    """
    G = named_graph(source)
    if G is not None:
        return G
    if source == "-":
        return parse_graph(sys.stdin.read())
    path = Path(source)
    if path.is_file():
        logger.debug("reading graph from %s", path)
        return parse_graph(path.read_text())
    return parse_graph(source.replace(";", "\n"))


def load_graphs(sources: Iterable[str]) -> List[Graph]:
    return [load_graph(s) for s in sources]


def common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--field", default=None, help="coefficient field: qq or a prime (default from BEILAB_FIELD)")
    parent.add_argument("--seed", type=int, default=None, help="top-level seed for randomized stages")
    parent.add_argument("--format", choices=FORMATS, default="text")
    parent.add_argument("--k-max", type=int, default=2)
    return parent


def apply_overrides(args: argparse.Namespace) -> None:
    """Push --field/--seed into the settings singleton and the environment of worker processes."""
    if getattr(args, "field", None) is not None:
        settings.field = args.field
        os.environ["BEILAB_FIELD"] = args.field
    if getattr(args, "seed", None) is not None:
        settings.seed = args.seed
        os.environ["BEILAB_SEED"] = str(args.seed)


def emit_json(models: Iterable[BaseModel]) -> None:
    """JSON lines, one record per model."""
    for m in models:
        print(m.model_dump_json())


def emit_csv(frame: pd.DataFrame) -> None:
    sys.stdout.write(frame.to_csv(index=False))
