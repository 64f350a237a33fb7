"""Command-line front end.

Exit status: 0 when every level succeeded, 2 when some level reported
FAIL (partial results are still written), 1 on input errors.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import results
from .driver import OPTIONAL_AUDITS, RunConfig, run_main
from .realize import DEFAULT_WIDTH
from .sysio import ParseError, parse_system_file

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


def parse_rational(text: str) -> Fraction:
    """Accept "p", "p/q", decimals ("0.25") and powers of two ("2^-53")."""
    text = text.strip()
    m = re.fullmatch(r"2\^(-?\d+)", text)
    if m:
        return Fraction(2) ** int(m.group(1))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polarpoints",
        description="Compute at least one point in each connected component of a smooth real algebraic set.",
    )
    ap.add_argument("--input", "-i", required=True, help="polynomial system file")
    ap.add_argument("--epsilon", type=parse_rational, default=Fraction(1, 2), help="failure probability, in (0,1)")
    ap.add_argument("--mode", choices=["practical", "certified"], default="practical")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--width", type=parse_rational, default=DEFAULT_WIDTH, help="relative root enclosure width")
    ap.add_argument("--output", "-o", help="write the JSON result here (default: stdout)")
    ap.add_argument("--audits", choices=["on", "off"], default="on")
    ap.add_argument("--raw-frame", action="store_true", help="report points in the randomized frame")
    ap.add_argument("--retry-budget", type=int, default=8)
    ap.add_argument("--verbose", "-v", action="store_true")
    return ap


def summary(report) -> str:
    lines = [f"n={report.system.n} p={report.system.p} d={report.system.d} seed={report.config.seed}"]
    for lv in report.levels:
        deg = lv.param.q.degree if lv.param else "-"
        line = f"level {lv.level}: {lv.status.upper()} deg q={deg} real points={len(lv.points)}"
        if lv.reason:
            line += f" ({lv.reason})"
        lines.append(line)
        for pt in lv.points:
            lines.append("    (" + ", ".join(results.decimal(c, 12) for c in pt.coordinates) + ")")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        text = Path(args.input).read_text()
        F = parse_system_file(text).to_input_system()
        cfg = RunConfig(
            epsilon=args.epsilon,
            mode=args.mode,
            seed=args.seed,
            width=args.width,
            retry_budget=args.retry_budget,
            audits=OPTIONAL_AUDITS if args.audits == "on" else frozenset(),
            raw_frame=args.raw_frame,
        )
    except ParseError as e:
        print(f"{args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    report = run_main(F, cfg)
    if args.output:
        results.write_result(report, args.output)
        print(summary(report))
    else:
        sys.stdout.write(results.dumps(report))
        print(summary(report), file=sys.stderr)
    return EXIT_FAIL if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
