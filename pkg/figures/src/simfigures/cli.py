"""Standalone figure tool: CSV log in, SVG figures out.

Exit codes: 0 success, 2 bad input (missing file/column, empty log,
unknown figure id).
"""

import argparse
import sys

from .render import FIGURE_IDS, EmptyLogError, MissingColumnError, render_all


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="simfigures",
        description="Render result figures from a simulation CSV log")
    parser.add_argument("csv", help="run log in the simulator's CSV schema")
    parser.add_argument("--out", default="figures-out", help="output directory")
    parser.add_argument("--figures", default=None,
                        help=f"comma-separated subset of: {', '.join(FIGURE_IDS)}")
    args = parser.parse_args(argv)

    only = None
    if args.figures:
        only = tuple(name.strip() for name in args.figures.split(",") if name.strip())
    try:
        written = render_all(args.csv, args.out, only)
    except (OSError, ValueError, MissingColumnError, EmptyLogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
