#!/usr/bin/env python3
"""Render a backtest summary (observed vs expected cells) from Nass JSON.

Usage:
    plot_backtest.py <json> --out bt.png
"""

import argparse
import sys

from vulnrisk_plots import PlotError, render_backtest


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("json_path")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title")
    args = parser.parse_args(argv)
    try:
        fig, data = render_backtest(args.json_path, title=args.title)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fig.savefig(args.out, dpi=130)
    print(f"wrote {args.out} (p-value {data['p_value']:.4g})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
