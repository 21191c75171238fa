"""Command line: ``rrcas [options] FILE.rrs`` (``-`` reads standard input)."""

from __future__ import annotations

import argparse
import logging
import sys

from .cli_io.parser import ParseError, parse_session
from .session import Settings, run_session


def build_parser():
    ap = argparse.ArgumentParser(prog="rrcas", description="Run a .rrs session script.")
    ap.add_argument("script", help="session file (.rrs) or - for standard input")
    ap.add_argument("--seed", type=int, default=0, help="seed for random choices")
    ap.add_argument("--n-max", type=int, default=12, help="largest power scanned for rho")
    ap.add_argument("--koszul-cap", type=int, default=8, help="max generators in Koszul grade")
    ap.add_argument("--power-cap", type=int, default=4, help="max power in depth tables")
    ap.add_argument("--fail-fast", action="store_true", help="stop at the first failing command")
    ap.add_argument("--json", metavar="PATH", help="write JSON lines to PATH")
    ap.add_argument("--parallel", type=int, nargs="?", const=2, default=0, metavar="N",
                    help="run commands in N worker processes (output keeps command order)")
    ap.add_argument("--exact", action="store_true",
                    help="compute graded depths over the input field instead of modulo a prime")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.script == "-":
        text = sys.stdin.read()
    else:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    try:
        s = parse_session(text)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    settings = Settings(args.seed, args.n_max, args.koszul_cap, args.power_cap, args.exact)
    out = open(args.json, "w", encoding="utf-8") if args.json else None
    try:
        return run_session(s, out=out, settings=settings, fail_fast=args.fail_fast,
                           parallel=args.parallel, source=text)
    finally:
        if out is not None:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
