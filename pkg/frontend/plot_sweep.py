#!/usr/bin/env python3
"""Render comparison curves from a vulnrisk sweep CSV.

Usage:
    plot_sweep.py <csv> --measures vcovar,vcoes --out fig.png
"""

import argparse
import sys

from vulnrisk_plots import PlotError, render_sweep


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path")
    parser.add_argument("--measures", required=True,
                        help="comma-separated measure names")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title")
    args = parser.parse_args(argv)
    measures = [m for m in (s.strip() for s in args.measures.split(","))
                if m]
    try:
        fig, panels = render_sweep(args.csv_path, measures, title=args.title)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fig.savefig(args.out, dpi=130)
    names = ", ".join(panel.measure for panel in panels)
    print(f"wrote {args.out} ({len(panels)} panel(s): {names})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
