"""
Command-line front end: ``mst-fortify <solver> --input FILE [flags]``.

Exit status is 0 on success, 1 on input errors and solver failures, and 2 when
a requested check (or a decomposition verification) finds a violated guarantee.
"""

import argparse
import asyncio
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from .commands import COMMAND_GROUPS, CommandFailure, default_collection
from .errors import FortifyError
from .instance import format_rational, parse_rational
from .records import ResultRecord, SolveRequest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VIOLATION = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _rational(text: str):
    try:
        return parse_rational(text)
    except FortifyError as e:
        raise argparse.ArgumentTypeError(e.message) from e


def _rationals(text: str):
    return [_rational(part.strip()) for part in text.split(",") if part.strip()]


def _epilog() -> str:
    lines = ["solvers:"]
    for group in COMMAND_GROUPS:
        names = ", ".join(command.name for command in group.commands)
        lines.append(f"  {group.family:<8} {group.description}")
        lines.append(f"  {'':<8}   {names}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mst-fortify",
        description="Raise minimum spanning tree weight under a lifting budget.",
        epilog=_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("solver", help="solver to run; see the list below")
    parser.add_argument("--input", metavar="FILE", help="instance file, or - for standard input")
    parser.add_argument("--budget", type=_rational, metavar="Q")
    parser.add_argument("--target", type=int, metavar="N")
    parser.add_argument("--eps", type=_rational, metavar="Q")
    parser.add_argument("--clique-size", type=int, metavar="N")
    parser.add_argument("--source", type=int, metavar="N")
    parser.add_argument("--sink", type=int, metavar="N")
    parser.add_argument("--weights", type=_rationals, metavar="W1,W2,...")
    parser.add_argument("--format", choices=("json", "csv-curve"), default="json")
    parser.add_argument("--check", action="store_true", help="compare against the matching oracle")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _read_instance(path: str | None) -> str:
    if path is None:
        return ""
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def render_csv_curve(record: ResultRecord) -> str:
    if record.curve is None:
        raise UsageError(f"solver {record.solver} produces no curve; use --format json")
    rows = ["budget,mst_weight,slope"]
    rows += [
        ",".join(format_rational(value) for value in (row.budget, row.mst_weight, row.slope))
        for row in record.curve
    ]
    return "\n".join(rows)


def run(argv: Sequence[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
        instance = _read_instance(args.input)
    except UsageError as e:
        sys.stderr.write(f"mst-fortify: {e}\n")
        return EXIT_FAILURE
    _configure_logging(args.verbose)
    logger.debug("running %s on %s", args.solver, args.input or "no input")
    request = SolveRequest(
        instance=instance,
        budget=args.budget,
        target=args.target,
        eps=args.eps,
        clique_size=args.clique_size,
        source=args.source,
        sink=args.sink,
        weights=args.weights,
        check=args.check,
    )
    result = asyncio.run(default_collection().run(name=args.solver, request=request))
    if isinstance(result, CommandFailure) or result.record is None:
        sys.stderr.write(f"mst-fortify: {result.error}\n")
        return EXIT_FAILURE
    record = result.record
    try:
        text = record.model_dump_json(indent=2, exclude_none=True)
        if args.format == "csv-curve":
            text = render_csv_curve(record)
    except UsageError as e:
        sys.stderr.write(f"mst-fortify: {e}\n")
        return EXIT_FAILURE
    sys.stdout.write(text + "\n")
    if result.violated:
        sys.stderr.write(f"mst-fortify: check failed: {record.check.detail}\n")
        return EXIT_VIOLATION
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))
