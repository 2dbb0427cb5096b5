"""Command line entry: regretplots CSV [CSV ...] --kind KIND --out PATH."""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, MissingColumn, PlotSpec, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="regretplots",
        description="render figures from regret-simulation CSV exports")
    parser.add_argument("csv", nargs="+", help="input CSV path(s)")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = PlotSpec(csv_paths=tuple(args.csv), kind=args.kind,
                    out_path=args.out)
    try:
        out = render(spec)
    except MissingColumn as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"figure written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
