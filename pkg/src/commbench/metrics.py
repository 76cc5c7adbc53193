"""Partition quality metrics.

Modularity and normalized cut are computed on the graph itself. Silhouette,
compactness, Calinski-Harabasz and separability need a point space and are
computed on a node embedding (see :mod:`commbench.spectral`).
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .graph import Graph, cut_and_volume
from .partition import Partition, canonicalize
from .spectral import Embedding

if TYPE_CHECKING:
    from .detect.base import DetectOutcome

METRIC_NAMES = (
    "modularity",
    "normalized_cut",
    "silhouette",
    "compactness",
    "calinski_harabasz",
    "separability",
)
TABLE_COLUMNS = ("algorithm", "communities") + METRIC_NAMES + ("seconds",)
SILHOUETTE_FULL_LIMIT = 5000
SILHOUETTE_DEFAULT_SAMPLE = 2000


class UndefinedMetricError(ValueError):
    pass


def _canon(p) -> Partition:
    return canonicalize(p)


def _points(e: Embedding | np.ndarray) -> np.ndarray:
    x = np.asarray(e.coords if isinstance(e, Embedding) else e, dtype=float)
    return x[:, None] if x.ndim == 1 else x


def modularity(g: Graph, p) -> float:
    if g.m == 0:
        raise UndefinedMetricError("modularity is undefined for a graph without edges")
    cut, vol = cut_and_volume(g, _canon(p))
    two_m = 2.0 * g.m
    # internal weight of c is (vol - cut) / 2
    return math.fsum(((vol - cut) / two_m - (vol / two_m) ** 2).tolist())


def normalized_cut(g: Graph, p) -> float:
    p = _canon(p)
    cut, vol = cut_and_volume(g, p)
    if (vol <= 0).any():
        raise UndefinedMetricError("normalized cut is undefined for a zero-volume community")
    return math.fsum((cut / vol).tolist()) / p.community_count


def _centroids(x: np.ndarray, p: Partition) -> np.ndarray:
    sums = np.stack(
        [np.bincount(p.community_of, weights=x[:, j], minlength=p.community_count) for j in range(x.shape[1])],
        axis=1,
    )
    return sums / p.sizes[:, None]


def silhouette(e: Embedding | np.ndarray, p, sample: int | None = None, seed: int = 0,
               chunk: int = 512) -> float:
    """Mean silhouette width with Euclidean distances.

    Members of singleton communities score 0. With ``sample`` the mean is
    taken over a seeded uniform sample of nodes, each still compared against
    every node.
    """
    x = _points(e)
    p = _canon(p)
    if len(x) != len(p):
        raise ValueError("embedding and partition sizes differ")
    if p.community_count < 2:
        raise UndefinedMetricError("silhouette needs at least 2 communities")
    n, k = len(x), p.community_count
    if sample is not None and sample < n:
        idx = np.sort(np.random.default_rng(seed).choice(n, size=sample, replace=False))
    else:
        idx = np.arange(n)
    onehot = np.zeros((n, k))
    onehot[np.arange(n), p.community_of] = 1.0
    sizes = p.sizes.astype(float)

    scores = []
    for lo in range(0, len(idx), chunk):
        rows = idx[lo:lo + chunk]
        sums = cdist(x[rows], x) @ onehot
        own = p.community_of[rows]
        r = np.arange(len(rows))
        own_size = sizes[own]
        a = np.where(own_size > 1, sums[r, own] / np.maximum(own_size - 1, 1), 0.0)
        means = sums / sizes[None, :]
        means[r, own] = np.inf
        b = means.min(axis=1)
        denom = np.maximum(a, b)
        s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
        s[own_size <= 1] = 0.0
        scores.append(s)
    return float(np.concatenate(scores).mean())


def compactness(e: Embedding | np.ndarray, p) -> float:
    x = _points(e)
    p = _canon(p)
    mu = _centroids(x, p)
    sq = ((x - mu[p.community_of]) ** 2).sum(axis=1)
    per = np.bincount(p.community_of, weights=sq, minlength=p.community_count) / p.sizes
    return math.fsum(per.tolist())


def calinski_harabasz(e: Embedding | np.ndarray, p) -> float:
    x = _points(e)
    p = _canon(p)
    n, k = len(x), p.community_count
    if k < 2 or k >= n:
        raise UndefinedMetricError(f"Calinski-Harabasz needs 2 <= k < N (k={k}, N={n})")
    mu = _centroids(x, p)
    overall = x.mean(axis=0)
    between = math.fsum((p.sizes * ((mu - overall) ** 2).sum(axis=1)).tolist())
    within = math.fsum(((x - mu[p.community_of]) ** 2).sum(axis=1).tolist())
    if between == 0.0:
        return 0.0
    if within == 0.0:
        return math.inf
    return (between / within) * ((n - k) / (k - 1))


def separability(e: Embedding | np.ndarray, p) -> float:
    x = _points(e)
    p = _canon(p)
    k = p.community_count
    if k < 2:
        raise UndefinedMetricError("separability needs at least 2 communities")
    d = pdist(_centroids(x, p))
    return 2.0 * math.fsum(d.tolist()) / (k * (k - 1))


@dataclass
class MetricReport:
    algorithm_name: str
    modularity: float | None
    normalized_cut: float | None
    silhouette: float | None
    compactness: float | None
    calinski_harabasz: float | None
    separability: float | None
    community_count: int
    wall_time: float | None
    seed: int
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in METRIC_NAMES:
            if d[key] is not None and math.isinf(d[key]):
                d[key] = "inf"
        return d


def evaluate_all(
    g: Graph,
    e: Embedding | np.ndarray,
    outcome: DetectOutcome,
    seed: int = 0,
    silhouette_sample: int | None = None,
) -> MetricReport:
    """Score one detection outcome on every metric; undefined metrics become None with a note."""
    p = outcome.partition
    if silhouette_sample is None and g.node_count > SILHOUETTE_FULL_LIMIT:
        silhouette_sample = SILHOUETTE_DEFAULT_SAMPLE
    calls = {
        "modularity": lambda: modularity(g, p),
        "normalized_cut": lambda: normalized_cut(g, p),
        "silhouette": lambda: silhouette(e, p, sample=silhouette_sample, seed=seed),
        "compactness": lambda: compactness(e, p),
        "calinski_harabasz": lambda: calinski_harabasz(e, p),
        "separability": lambda: separability(e, p),
    }
    values, notes = {}, {}
    for name, fn in calls.items():
        try:
            values[name] = fn()
        except UndefinedMetricError as exc:
            values[name] = None
            notes[name] = str(exc)
    return MetricReport(
        algorithm_name=outcome.algorithm_name,
        community_count=p.community_count,
        wall_time=outcome.wall_time,
        seed=seed,
        notes=notes,
        **values,
    )


def format_value(x: float | None) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6g}"


def metric_rows(reports: Sequence[MetricReport], include_timing: bool = True) -> list[list[str]]:
    rows = []
    for r in reports:
        rows.append(
            [r.algorithm_name, str(r.community_count) if r.community_count else "NA"]
            + [format_value(getattr(r, m)) for m in METRIC_NAMES]
            + [format_value(r.wall_time if include_timing else None)]
        )
    return rows


def write_metric_table(path: str | Path, reports: Sequence[MetricReport], include_timing: bool = True) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        w.writerows(metric_rows(reports, include_timing))
