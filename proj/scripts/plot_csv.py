#!/usr/bin/env python3
"""Plot a scanwin CSV (sweep output or bqc optimize --format csv).

Usage: plot_csv.py INPUT.csv [--x COL] [--y COL ...] [--logy] [--out FILE.png]

The leading "# manifest:" line is shown as the figure title. Cells reading
"nan" are dropped. Needs matplotlib.
"""

import argparse
import csv
import json
import math
import sys


def read(path):
    with open(path, newline="") as f:
        first = f.readline()
        manifest = None
        if first.startswith("# manifest: "):
            manifest = json.loads(first[len("# manifest: "):])
        else:
            f.seek(0)
        rows = list(csv.DictReader(f))
    return manifest, rows


def as_float(cell):
    if cell in ("true", "false"):
        return float(cell == "true")
    try:
        return float(cell)
    except ValueError:
        return math.nan


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input")
    parser.add_argument("--x", help="column for the x axis (default: first)")
    parser.add_argument("--y", nargs="+", help="columns to plot (default: second)")
    parser.add_argument("--logy", action="store_true")
    parser.add_argument("--out", help="write an image instead of opening a window")
    args = parser.parse_args()

    import matplotlib

    if args.out:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    manifest, rows = read(args.input)
    if not rows:
        sys.exit("no data rows")
    columns = list(rows[0].keys())
    x_col = args.x or columns[0]
    y_cols = args.y or [columns[1]]

    fig, ax = plt.subplots()
    for y_col in y_cols:
        pts = [(as_float(r[x_col]), as_float(r[y_col])) for r in rows]
        pts = [(x, y) for x, y in pts if not (math.isnan(x) or math.isnan(y))]
        ax.plot([x for x, _ in pts], [y for _, y in pts], marker=".", label=y_col)
    ax.set_xlabel(x_col)
    if args.logy:
        ax.set_yscale("log")
    ax.legend()
    if manifest:
        params = ", ".join(
            f"{k}={v}" for k, v in manifest.get("parameters", {}).items() if not isinstance(v, (dict, list))
        )
        ax.set_title(f"{manifest.get('subcommand', '')}: {params}", fontsize=8)
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
