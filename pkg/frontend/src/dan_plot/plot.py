"""Line charts of mean expected path length versus the degree bound.

Consumes the benchmark harness's aggregate CSV (columns alg, delta, mean_epl)
and nothing else.  The plotted data model is a pure function of the CSV and
can be extracted from the figure for testing.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure
from matplotlib.ticker import ScalarFormatter

REQUIRED_COLUMNS = ("alg", "delta", "mean_epl")
DEGREE_TICKS = (8, 16, 32, 64, 128)

Series = dict[str, list[tuple[int, float]]]


def load_series(path: str | Path) -> Series:
    """Group the aggregate CSV into per-algorithm (delta, mean_epl) series."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"aggregate CSV is missing columns: {', '.join(missing)}")
        series: Series = {}
        for row in reader:
            series.setdefault(row["alg"], []).append(
                (int(row["delta"]), float(row["mean_epl"]))
            )
    if not series:
        raise ValueError("aggregate CSV has no data rows")
    for points in series.values():
        points.sort()
    return series


def build_figure(series: Series) -> Figure:
    """One line per algorithm on a log-scaled degree axis, EPL floored at 1.

    Where a series has no value for some degree in the union of degrees, the
    line is broken rather than interpolated.
    """
    all_deltas = sorted({d for points in series.values() for d, _ in points})
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.subplots()
    for alg in sorted(series):
        have = dict(series[alg])
        xs = all_deltas
        ys = [have.get(d, math.nan) for d in xs]
        ax.plot(xs, ys, marker="o", label=alg)
    ax.set_xscale("log")
    ax.set_xticks([t for t in DEGREE_TICKS])
    ax.xaxis.set_major_formatter(ScalarFormatter())
    ax.minorticks_off()
    top = max((v for pts in series.values() for _, v in pts), default=1.0)
    ax.set_ylim(bottom=1.0, top=max(1.5, 1.05 * top))
    ax.set_xlabel("Maximum degree")
    ax.set_ylabel("Average EPL")
    ax.grid(True, which="major", alpha=0.4)
    ax.legend()
    return fig


def extract_data_model(fig: Figure) -> Series:
    """Recover series names and finite point coordinates from a figure."""
    ax = fig.axes[0]
    model: Series = {}
    for line in ax.lines:
        points = [
            (int(x), float(y))
            for x, y in line.get_xydata()
            if not math.isnan(y)
        ]
        model[line.get_label()] = points
    return model


def render_epl_vs_delta(csv_path: str | Path, out_path: str | Path) -> Figure:
    """Render the aggregate CSV to an image file (format from the suffix)."""
    fig = build_figure(load_series(csv_path))
    fig.savefig(out_path, bbox_inches="tight")
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-epl",
        description="Plot mean expected path length against the degree bound",
    )
    parser.add_argument("aggregate", help="CSV with columns alg,delta,mean_epl")
    parser.add_argument("-o", "--out", required=True, help="output image (.svg or .png)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if (exc.code or 0) == 0 else 1
    try:
        render_epl_vs_delta(args.aggregate, args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
