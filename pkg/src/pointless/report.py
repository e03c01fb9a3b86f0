"""Render the census to a directory: CSV tables, a JSON summary, PNG charts.

Everything lands in one flat output directory.  The CSVs and the JSON are
byte-deterministic; the charts are for human eyes.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .census import (
    CensusConfig,
    SMALL_PRIMES,
    discrepancy_report,
    genus_bound,
    table_small_primes,
    table_summary,
)
from .serialize import (
    canonical_json,
    missed_csv_lines,
    row_to_dict,
    summary_csv_lines,
)

__all__ = ["render_report"]


def render_report(out_dir: str, threads: int | None = 1, max_p: int = 97):
    """Write tables, charts, and a machine summary; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    faithful = CensusConfig(mode="faithful")
    small = table_small_primes(faithful)
    wide = table_summary(max_p, faithful, min_p=29, threads=threads)
    findings = discrepancy_report(SMALL_PRIMES)
    written = []

    def _text(name: str, content: str):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
        written.append(path)

    _text("missed_small_primes.csv", "\n".join(missed_csv_lines(small)) + "\n")
    _text("summary_wide.csv", "\n".join(summary_csv_lines(wide)) + "\n")
    summary = {
        "small_primes": [row_to_dict(r) for r in small],
        "wide": [row_to_dict(r) for r in wide],
        "discrepancies": findings,
    }
    _text("summary.json", canonical_json(summary) + "\n")
    written.append(_missed_chart(out_dir, small))
    written.append(_wide_chart(out_dir, wide))
    return written


def _missed_chart(out_dir: str, rows) -> str:
    fig, ax = plt.subplots(figsize=(9, 4.8))
    for i, row in enumerate(rows):
        if row.missed:
            ax.scatter(row.missed, [i] * len(row.missed), s=14, color="tab:red")
        ax.scatter(
            [genus_bound(row.p)], [i], marker="|", s=120, color="tab:gray"
        )
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([str(row.p) for row in rows])
    ax.set_xlabel("genus")
    ax.set_ylabel("p")
    ax.set_title("Genera with no pointless curve below the window bound (bar)")
    ax.set_xscale("symlog")
    fig.tight_layout()
    path = os.path.join(out_dir, "missed_small_primes.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _wide_chart(out_dir: str, rows) -> str:
    ps = [row.p for row in rows]
    counts = [row.count for row in rows]
    largest = [row.largest for row in rows]
    fig, ax = plt.subplots(figsize=(9, 4.8))
    ax.bar(ps, counts, width=1.4, color="tab:blue", label="missed genera")
    ax.set_xlabel("p")
    ax.set_ylabel("missed genera in window", color="tab:blue")
    twin = ax.twinx()
    twin.plot(ps, largest, "o-", color="tab:orange", label="largest missed")
    twin.set_ylabel("largest missed genus", color="tab:orange")
    ax.set_title("Census summary by prime")
    fig.tight_layout()
    path = os.path.join(out_dir, "summary_wide.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
