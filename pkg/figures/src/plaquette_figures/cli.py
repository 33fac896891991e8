"""Command line: plaquette-fig <kind> --in <csv...> --out <img>.

Exit codes: 0 success, 1 bad arguments, 2 malformed CSV (message carries
row/column context).
"""

from __future__ import annotations

import argparse
import sys

from .csvio import MalformedCSV
from .render import DEFAULT_CURVES, KINDS, FigureJob, render


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plaquette-fig",
        description="Render figures from plaquette sweep CSV files.",
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    parser.add_argument("--out", required=True, metavar="IMG")
    parser.add_argument(
        "--cols",
        default=",".join(DEFAULT_CURVES),
        help="comma-separated S_ij selection for curves (default: the ten routing pairs)",
    )
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        job = FigureJob(
            inputs=tuple(args.inputs),
            kind=args.kind,
            output=args.out,
            columns=tuple(c.strip() for c in args.cols.split(",") if c.strip()),
            dpi=args.dpi,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        info = render(job)
    except MalformedCSV as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {info.output} ({info.kind}, {info.panels} panel(s))")
    return 0


if __name__ == "__main__":
    sys.exit(main())
