from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class DegreeSummary:
    histogram: dict[int, int]
    cdf: tuple[tuple[int, float], ...]
    max_degree: int
    node_count: int

    def fraction_leq(self, threshold: float) -> float:
        """Fraction of nodes whose degree is at most ``threshold``."""
        frac = 0.0
        for d, f in self.cdf:
            if d > threshold:
                break
            frac = f
        return frac


def degree_summary(g: Graph) -> DegreeSummary:
    deg = g.unweighted_degrees()
    values, counts = np.unique(deg, return_counts=True)
    n = g.node_count
    running = np.cumsum(counts)
    cdf = tuple((int(d), float(c) / n) for d, c in zip(values, running))
    # last entry is exactly 1.0 because running[-1] == n
    return DegreeSummary(
        histogram={int(d): int(c) for d, c in zip(values, counts)},
        cdf=cdf,
        max_degree=int(values[-1]) if len(values) else 0,
        node_count=n,
    )


def degree_centrality(g: Graph) -> np.ndarray:
    n = g.node_count
    if n < 2:
        raise ValueError("degree centrality needs at least 2 nodes")
    return g.unweighted_degrees() / (n - 1)


def top_hubs(g: Graph, count: int) -> list[tuple[int, float]]:
    """Highest-centrality nodes as ``(label, centrality)``, descending, ties by ascending label."""
    if count < 1:
        raise ValueError("count must be >= 1")
    c = degree_centrality(g)
    order = np.lexsort((g.original_ids, -c))[:count]
    return [(int(g.original_ids[i]), float(c[i])) for i in order]


def write_degree_tables(outdir: str | Path, g: Graph, summary: DegreeSummary | None = None) -> list[Path]:
    outdir = Path(outdir)
    summary = summary or degree_summary(g)
    paths = [outdir / "degree_histogram.csv", outdir / "degree_cdf.csv", outdir / "centrality.csv"]
    with open(paths[0], "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "count"])
        w.writerows(sorted(summary.histogram.items()))
    with open(paths[1], "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "cumulative_fraction"])
        w.writerows((d, f"{f:.6g}") for d, f in summary.cdf)
    with open(paths[2], "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "centrality"])
        cent = degree_centrality(g)
        w.writerows((int(label), f"{c:.6g}") for label, c in zip(g.original_ids, cent))
    return paths
