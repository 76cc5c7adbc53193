from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:
    from .graph import Graph


@dataclass(frozen=True, eq=False)
class Partition:
    """Flat node-to-community assignment in canonical form.

    Community indices run over ``0..community_count-1`` in order of first
    appearance along the node order, and none is empty.
    """

    community_of: np.ndarray
    community_count: int
    sizes: np.ndarray

    def __len__(self) -> int:
        return len(self.community_of)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.community_of, other.community_of)

    def members(self) -> list[np.ndarray]:
        order = np.argsort(self.community_of, kind="stable")
        return np.split(order, np.cumsum(self.sizes)[:-1])

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(int(x) for x in c) for c in self.members()}


def canonicalize(labels: Sequence[int] | np.ndarray | Partition) -> Partition:
    if isinstance(labels, Partition):
        labels = labels.community_of
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0:
        return Partition(labels.copy(), 0, np.zeros(0, dtype=np.int64))
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    out = rank[inv.reshape(-1)]
    sizes = np.bincount(out)
    return Partition(out, len(sizes), sizes)


def singletons(n: int) -> Partition:
    return Partition(np.arange(n, dtype=np.int64), n, np.ones(n, dtype=np.int64))


def top_k_communities(p: Partition, k: int) -> set[int]:
    """Indices of the ``k`` largest communities; ties go to the lower index."""
    if k < 1:
        raise ValueError("k must be >= 1")
    order = np.lexsort((np.arange(p.community_count), -p.sizes))
    return {int(c) for c in order[:k]}


@dataclass(frozen=True)
class CommunitySizeSummary:
    count: int
    min_size: int
    median_size: int
    max_size: int
    top_sizes: tuple[int, ...]


def size_summary(p: Partition, top: int = 15) -> CommunitySizeSummary:
    sizes = sorted((int(s) for s in p.sizes), reverse=True)
    return CommunitySizeSummary(
        count=p.community_count,
        min_size=sizes[-1],
        median_size=int(statistics.median_low(sizes)),
        max_size=sizes[0],
        top_sizes=tuple(sizes[:top]),
    )


def write_membership_csv(path: str | Path, g: Graph, p: Partition) -> None:
    # node indices are already in ascending label order
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "community"])
        for label, c in zip(g.original_ids, p.community_of):
            w.writerow([int(label), int(c)])


def read_membership_csv(path: str | Path, g: Graph) -> Partition:
    index = {int(label): i for i, label in enumerate(g.original_ids)}
    labels = np.full(g.node_count, -1, dtype=np.int64)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            labels[index[int(row["node"])]] = int(row["community"])
    if (labels < 0).any():
        raise ValueError("membership file does not cover every node")
    return canonicalize(labels)
