"""Command-line interface: ``cavlqu sweep`` and ``cavlqu events``.

Exit status is 0 on success, 1 for invalid arguments and 2 for numerical
failures.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InvalidInput, NumericalError
from .sweep import (
    SweepConfig,
    SweepFailure,
    detect_merge,
    parse_state,
    run_sweep,
    write_csv,
    write_rows,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _state(text: str):
    try:
        return parse_state(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(p: argparse.ArgumentParser, default_kt_max: float) -> None:
    p.add_argument("--state", type=_state, required=True, metavar="pure:ALPHA|werner:P",
                   help="initial cavity state, e.g. pure:sqrt(1/3) or werner:0.6")
    p.add_argument("--kt-max", type=float, default=default_kt_max)
    p.add_argument("--steps", type=int, default=300)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cavlqu", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="write LQU and concurrence curves as CSV")
    _add_common(sw, 3.0)
    sw.add_argument("--out", default="-", help="output file (default: stdout)")
    sw.add_argument("--oracle-check", action="store_true",
                    help="re-check every 10th cavity LQU by brute-force minimisation")

    ev = sub.add_parser("events", help="print where cavity and reservoir LQU meet and separate")
    _add_common(ev, 3.0)
    ev.add_argument("--equal-tol", type=float, default=1e-6)
    return parser


def _fmt(x) -> str:
    return "none" if x is None else f"{x:.4f}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SweepConfig(args.state, args.kt_max, args.steps, getattr(args, "oracle_check", False))
    except InvalidInput as exc:
        parser.error(str(exc))
    try:
        records = run_sweep(cfg)
        if args.command == "sweep":
            if args.out == "-":
                write_rows(records, sys.stdout)
            else:
                write_csv(records, args.out)
        else:
            ev = detect_merge(records, args.equal_tol, rho_cc=cfg.state.initial())
            print(_fmt(ev.meet_kt), _fmt(ev.separate_kt))
            note = "degenerate: both curves zero" if ev.degenerate else f"merged={ev.merged}"
            print(f"# {note} max_diff={ev.max_diff if ev.max_diff is not None else 'n/a'}",
                  file=sys.stderr)
    except (SweepFailure, NumericalError) as exc:
        print(f"cavlqu: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"cavlqu: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
