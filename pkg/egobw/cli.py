"""
Command-line entry point for egobw.

Usage:
    egobw topk GRAPH --k K [--algo {base,opt}] [--theta THETA]
    egobw score GRAPH [--parallel {none,vertex,edge}] [--threads N]
    egobw update GRAPH --stream FILE [--mode {local,lazy}] [--k K] [--threads N]
    egobw verify [--trials N] [--max-n N] [--seed S]
    egobw compare GRAPH --k K [--force]
    egobw bench GRAPH [--k K ...] [--theta THETA ...] [--sample FRACTION] [--seed S]
                [--updates N] [--threads T ...]

Graphs are edge-list files with two vertex ids per line; update streams hold
one "+ u v" or "- u v" operation per line. Both accept '#' comment lines.

Results are printed to standard output as tab-separated rows, progress and
errors go to standard error. Exit status is 0 on success, 1 when the
property suite fails, 2 on usage errors and 3 on unreadable or malformed
input.

Tunables such as the default theta are read from an optional
egobw_settings.json in the current directory.
"""

import argparse
import logging
import os
import sys

from egobw.commands import (
    EXIT_IO,
    EXIT_USAGE,
    cmd_bench,
    cmd_compare,
    cmd_score,
    cmd_topk,
    cmd_update,
    cmd_verify,
)
from egobw.data_loader import SettingsLoader
from egobw.errors import GraphError, GraphFormatError, ParameterError


def positive_int(text: str) -> int:
    """
    argparse type for integers >= 1
    """
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be at least 1")
    return value


def ratio(text: str) -> float:
    """
    argparse type for gradient ratios >= 1
    """
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value >= 1.0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"{text!r} must be a finite value >= 1")
    return value


def fraction(text: str) -> float:
    """
    argparse type for sampling fractions in (0, 1]
    """
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text!r} must be in (0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egobw",
        description="Ego-betweenness scores, top-k search and maintenance.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    topk = commands.add_parser("topk", help="Top-k vertices by ego-betweenness.")
    topk.add_argument("graph", help="Edge-list file")
    topk.add_argument("--k", type=positive_int, required=True)
    topk.add_argument("--algo", choices=("base", "opt"), default="opt")
    topk.add_argument("--theta", type=ratio, help="Gradient ratio (default 1.05)")
    topk.set_defaults(handler=cmd_topk)

    score = commands.add_parser("score", help="Score every vertex.")
    score.add_argument("graph", help="Edge-list file")
    score.add_argument(
        "--parallel", choices=("none", "vertex", "edge"), default="none"
    )
    score.add_argument("--threads", type=positive_int, default=1)
    score.set_defaults(handler=cmd_score)

    update = commands.add_parser("update", help="Replay an edge update stream.")
    update.add_argument("graph", help="Edge-list file")
    update.add_argument("--stream", required=True, help="Update-stream file")
    update.add_argument("--mode", choices=("local", "lazy"), default="local")
    update.add_argument("--k", type=positive_int, help="Answer size for lazy mode")
    update.add_argument("--threads", type=positive_int, default=1)
    update.set_defaults(handler=cmd_update)

    verify = commands.add_parser("verify", help="Run the seeded property suite.")
    verify.add_argument("--trials", type=positive_int)
    verify.add_argument("--max-n", dest="max_n", type=positive_int)
    verify.add_argument("--seed", type=int)
    verify.set_defaults(handler=cmd_verify)

    compare = commands.add_parser(
        "compare", help="Compare ego-betweenness and betweenness top-k."
    )
    compare.add_argument("graph", help="Edge-list file")
    compare.add_argument("--k", type=positive_int, required=True)
    compare.add_argument(
        "--force", action="store_true", help="Run betweenness on large graphs"
    )
    compare.set_defaults(handler=cmd_compare)

    bench = commands.add_parser(
        "bench", help="Time searches, updates and parallel scoring."
    )
    bench.add_argument("graph", help="Edge-list file")
    bench.add_argument("--k", type=positive_int, action="append")
    bench.add_argument("--theta", type=ratio, action="append")
    bench.add_argument("--sample", type=fraction, help="Fraction of edges to keep")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument(
        "--updates", type=positive_int, help="Time this many random edge updates"
    )
    bench.add_argument(
        "--threads",
        type=positive_int,
        action="append",
        help="Time parallel scoring with this many threads",
    )
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Main entry point for the egobw command.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    # Set up logging configuration
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    try:
        settings = SettingsLoader(os.getcwd()).data
        return args.handler(args, settings)
    except ParameterError as err:
        logging.error("%s", err)
        return EXIT_USAGE
    except (GraphFormatError, GraphError) as err:
        logging.error("%s", err)
        return EXIT_IO
    except (OSError, ValueError) as err:
        logging.error("%s", err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
