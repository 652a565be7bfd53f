"""
Command-line entry point: `python -m beilab.main <verb> ...`.

Verbs: analyze, enumerate, witness, betti. Exit codes: 0 ok, 1 input
error, 2 verification failure, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from beilab import __version__
from beilab.commands import analyze, betti, enumerate as enumerate_cmd, witness
from beilab.errors import BeiLabError
from beilab.settings import settings

logger = logging.getLogger("beilab")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beilab", description="Binomial edge ideals of small graphs: formulas and oracle checks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="overrides BEILAB_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    analyze.register(subparsers)
    enumerate_cmd.register(subparsers)
    witness.register(subparsers)
    betti.register(subparsers)
    return parser


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(level=(level or settings.log_level).upper(), format="[%(name)s] %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except BeiLabError as e:
        logger.debug("%s failed", args.verb, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
