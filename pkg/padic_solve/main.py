import argparse
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from padic_solve.cli import commands
from padic_solve.cli.output import FORMATS
from padic_solve.core.config import settings
from padic_solve.core.errors import DomainError, PadicSolveError

logger = logging.getLogger("padic_solve")


def int_range(text: str) -> List[int]:
    """`7`, `1..6` (inclusive) or a comma-separated mix such as `1..3,5`."""
    values: List[int] = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition("..")
        try:
            start = int(lo)
            stop = int(hi) if sep else start
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer or lo..hi, got {part!r}") from None
        if stop < start:
            raise argparse.ArgumentTypeError(f"empty range {part!r}")
        values.extend(range(start, stop + 1))
    return values


def _instance_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for name, meaning in (
        ("g", "base (unit modulo p)"),
        ("n", "exponent on x inside the power of g"),
        ("k", "exponent on x on the right-hand side"),
        ("p", "odd prime"),
        ("e", "precision: work modulo p^e"),
    ):
        common.add_argument(f"--{name}", type=int_range, metavar="N|LO..HI", help=meaning)
    common.add_argument("--format", choices=FORMATS, help="output format (default json, text for table)")
    common.add_argument("--ceiling", type=int, help="largest oracle window m*p^e (env PADIC_SOLVE_CEILING)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-solve",
        description="Count and enumerate solutions of g^(x^n) = x^k (mod p^e).",
    )
    parser.add_argument("--version", action="version", version=f"{settings.service_name} {settings.version}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")
    common = _instance_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", parents=[common], help="closed-form counts over a grid of instances")
    count.add_argument("--check", action="store_true", help="compare each count against the oracle")
    count.set_defaults(handler=commands.cmd_count)

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="list the solutions of one instance")
    enumerate_.add_argument("--check", action="store_true", help="compare against the oracle")
    enumerate_.set_defaults(handler=commands.cmd_enumerate)

    oracle = sub.add_parser("oracle", parents=[common], help="brute-force scan of one instance")
    oracle.add_argument("--check", action="store_true", help="compare against the enumeration")
    oracle.add_argument("--exploratory", action="store_true", help="allow cases without a counting result")
    oracle.set_defaults(handler=commands.cmd_oracle)

    wieferich = sub.add_parser("wieferich", parents=[common], help="test g^(p-1) = 1 (mod p^2)")
    wieferich.set_defaults(handler=commands.cmd_wieferich)

    table = sub.add_parser("table", parents=[common], help="reproduce a reference grid of counts")
    table.add_argument("table", type=int, choices=(1, 2))
    table.add_argument("--verify", action="store_true", help="check every cell by enumeration and oracle")
    table.add_argument("--e-max", type=int, help="last precision column of table 2 (default 4)")
    table.set_defaults(handler=commands.cmd_table)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.getLevelName(settings.log_level.upper())
    if not isinstance(level, int):
        level = logging.WARNING
    if verbosity:
        level = min(level, logging.DEBUG if verbosity > 1 else logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text" if args.command == "table" else "json"
    _configure_logging(args.verbose)

    try:
        return args.handler(args, out=sys.stdout)
    except ValidationError as exc:
        error: PadicSolveError = DomainError(str(exc))
    except PadicSolveError as exc:
        error = exc
    logger.error(f"{args.command} failed: {error}")
    print(f"padic-solve: error: {error}", file=sys.stderr)
    return error.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
