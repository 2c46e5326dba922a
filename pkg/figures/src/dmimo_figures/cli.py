"""Command line entry point: plots --fig <id> --in <csv> --out <path>."""

import argparse
import sys

from . import __version__
from .errors import FigureError
from .figures import FIGURES, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render publication-style figures from sweep CSV files.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--fig", required=True, choices=sorted(FIGURES), help="figure id")
    parser.add_argument("--in", dest="csv_path", required=True, help="input sweep CSV")
    parser.add_argument("--out", required=True, help="output image (.png, .svg or .pdf)")
    parser.add_argument("--log-y", action="store_true", help="log-scale the capacity axis")
    parser.add_argument(
        "--no-bands", action="store_true", help="suppress the 95%% confidence bands"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            csv_path=args.csv_path,
            figure_id=args.fig,
            out_path=args.out,
            log_y=args.log_y,
            bands=not args.no_bands,
        )
        written = render(spec)
    except (FigureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(written)
    return 0


if __name__ == "__main__":
    sys.exit(main())
