"""Command-line entry point: results.json in, figures + CSV sidecars out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import PLOT_KINDS, PlotRequest, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cutfigs", description="figures from results.json")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one plot kind to an output directory")
    p.add_argument("--results", required=True)
    p.add_argument("--kind", required=True, choices=PLOT_KINDS)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--solvers", default=None, help="comma-separated filter")
    p.set_defaults(func=cmd_render)
    return parser


def cmd_render(args) -> int:
    solvers = None
    if args.solvers:
        solvers = tuple(s.strip() for s in args.solvers.split(",") if s.strip())
    request = PlotRequest(
        results=Path(args.results),
        kind=args.kind,
        out_dir=Path(args.out_dir),
        solvers=solvers,
    )
    for image in render(request):
        print(image)
    return 0


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
