"""Static line plots from entangling-power sweep CSV files.

Input schema (produced by `chm-mub ep-sweep`): header ``x,value_ebits,
curve_label`` and one row per grid point per curve.  One line is drawn per
distinct label; single-point curves render as markers.  Output is
deterministic for a fixed style, so re-rendering the same CSV gives the
same bytes.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["PlotJob", "SweepCsvError", "read_sweep_csv", "render", "main"]

EXPECTED_HEADER = ["x", "value_ebits", "curve_label"]
LOG2_3 = math.log2(3.0)


class SweepCsvError(ValueError):
    """Missing, malformed, or empty sweep CSV."""


@dataclass(frozen=True)
class PlotJob:
    csv_path: str
    out_path: str
    title: str = ""
    y_max_line: float | None = None


def read_sweep_csv(path: str) -> dict[str, list[tuple[float, float]]]:
    """Curves keyed by label, points in file order."""
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise SweepCsvError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SweepCsvError(f"{path}: empty file") from None
        if header != EXPECTED_HEADER:
            raise SweepCsvError(f"{path}: expected header {','.join(EXPECTED_HEADER)!r}, got {','.join(header)!r}")
        curves: dict[str, list[tuple[float, float]]] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise SweepCsvError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
            try:
                x = float(row[0])
                y = float(row[1])
            except ValueError as exc:
                raise SweepCsvError(f"{path}:{lineno}: non-numeric value ({exc})") from exc
            curves.setdefault(row[2], []).append((x, y))
    if not curves:
        raise SweepCsvError(f"{path}: no data rows")
    return curves


def render(job: PlotJob) -> list[str]:
    """Write the plot image; returns the legend labels in drawing order."""
    curves = read_sweep_csv(job.csv_path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=150)
    labels = []
    for label, points in curves.items():
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        style = {"marker": "o", "linestyle": "none"} if len(points) == 1 else {}
        ax.plot(xs, ys, label=label, linewidth=1.4, **style)
        labels.append(label)
    if job.y_max_line is not None:
        ax.axhline(job.y_max_line, color="0.4", linewidth=0.9, linestyle="--")
    ax.set_xlabel("x (radians)")
    ax.set_ylabel("ebits")
    if job.title:
        ax.set_title(job.title)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(job.out_path, metadata={"Software": "sweep-plots"})
    plt.close(fig)
    return labels


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="plot_sweep", description=__doc__)
    parser.add_argument("csv", help="sweep CSV file")
    parser.add_argument("out_image", help="output image path (png)")
    parser.add_argument("--title", default="")
    parser.add_argument("--refline", action="store_true", help="draw the log2(3) reference line")
    ns = parser.parse_args(argv)
    job = PlotJob(
        csv_path=ns.csv,
        out_path=ns.out_image,
        title=ns.title,
        y_max_line=LOG2_3 if ns.refline else None,
    )
    try:
        labels = render(job)
    except SweepCsvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {ns.out_image} with {len(labels)} curves")
    return 0


if __name__ == "__main__":
    sys.exit(main())
