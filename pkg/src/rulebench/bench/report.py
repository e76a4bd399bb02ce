"""CSV and plot output for timing records."""

from __future__ import annotations

import csv
from pathlib import Path

from .timing import PHASES, TimingRecord

CSV_COLUMNS = (
    "benchmark",
    "variant",
    "size_param",
    "phase",
    "cpu_seconds_mean",
    "runs",
    "result_size",
    "seed",
)


def _sort_key(r: TimingRecord):
    return (r.benchmark, r.variant, str(r.size_param), PHASES.index(r.phase))


def write_csv(records, path) -> None:
    """Write records sorted by (benchmark, variant, size_param, phase).

    An empty record list still produces the header line, so downstream
    tooling can distinguish "ran, nothing measured" from "never ran".
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in sorted(records, key=_sort_key):
            w.writerow(
                [
                    r.benchmark,
                    r.variant,
                    r.size_param,
                    r.phase,
                    f"{r.cpu_seconds_mean:.6f}",
                    r.runs,
                    r.result_size,
                    r.seed,
                ]
            )


def _series(records):
    """(variant -> sorted [(size, total seconds)]), totals only."""
    by_variant: dict[str, list[tuple[float, float]]] = {}
    for r in records:
        if r.phase != "total":
            continue
        try:
            x = float(r.size_param)
        except (TypeError, ValueError):
            # sizes like "1000:10000"; plot against the second component
            x = float(str(r.size_param).rsplit(":", 1)[-1])
        by_variant.setdefault(r.variant, []).append((x, r.cpu_seconds_mean))
    for pts in by_variant.values():
        pts.sort()
    return by_variant


def write_plot(records, path) -> None:
    """Plot total CPU time against size, one series per variant.

    A .dat target gets gnuplot-style columns (variant blocks separated by
    blank lines); anything else goes through matplotlib.
    """
    path = Path(path)
    series = _series(records)
    if path.suffix == ".dat":
        with open(path, "w", encoding="utf-8") as fh:
            for variant in sorted(series):
                fh.write(f"# {variant}\n")
                for x, y in series[variant]:
                    fh.write(f"{x:g} {y:.6f}\n")
                fh.write("\n")
        return
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    for variant in sorted(series):
        xs = [x for x, _ in series[variant]]
        ys = [y for _, y in series[variant]]
        ax.plot(xs, ys, marker="o", label=variant)
    ax.set_xlabel("size")
    ax.set_ylabel("CPU seconds")
    if series:
        ax.legend()
    fig.savefig(path)
    plt.close(fig)


__all__ = ["CSV_COLUMNS", "write_csv", "write_plot"]
