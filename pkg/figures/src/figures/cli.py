"""Standalone figure renderer for curve CSV files."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_PRESETS, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="secrecyfig",
        description="Render a secrecy-performance figure from a curve CSV.")
    parser.add_argument("--input", required=True, help="curve CSV path")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--preset", default=None,
                        help="standard figure name (sets grouping and title)")
    parser.add_argument("--metric", default=None,
                        help="metric filter for multi-metric files")
    parser.add_argument("--group-by", default=None,
                        help="comma-separated grouping columns (default: scheme)")
    parser.add_argument("--title", default=None)
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)

    if args.preset is not None:
        if args.preset not in FIGURE_PRESETS:
            parser.error(f"unknown preset {args.preset!r}; "
                         f"available: {', '.join(sorted(FIGURE_PRESETS))}")
        group_keys, title = FIGURE_PRESETS[args.preset]
    else:
        group_keys, title = ("scheme",), ""
    if args.group_by is not None:
        group_keys = tuple(k.strip() for k in args.group_by.split(",") if k.strip())
    if args.title is not None:
        title = args.title

    try:
        result = render(FigureSpec(
            input_path=args.input, output_path=args.out, metric=args.metric,
            group_keys=group_keys, title=title, dpi=args.dpi))
    except (OSError, ValueError) as err:
        print(f"secrecyfig: {err}", file=sys.stderr)
        return 1
    print(f"wrote {result.output_path}: {len(result.curves)} curves "
          f"({result.metric}, {result.y_scale} y-axis)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
