"""Undirected weighted graphs in compressed adjacency form.

Edge lists in the SNAP style (``u v`` per line, ``#`` comments) are parsed
into a :class:`Graph` whose nodes are densely re-indexed in ascending label
order. Weights are kept as floats so that community aggregation can produce
weighted graphs with self-loops.
"""

from __future__ import annotations

import gzip
import io
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, BinaryIO, Iterable, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

if TYPE_CHECKING:
    from .partition import Partition


class ParseError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based, or None for whole-input errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph.

    ``indptr``/``indices``/``weights`` hold a CSR adjacency without diagonal
    entries; each neighbour list is sorted and duplicate free. Self-loop weight
    lives in ``self_loops`` and counts twice towards a node's degree.
    """

    original_ids: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    self_loops: np.ndarray
    degrees: np.ndarray = field(init=False, repr=False)
    total_weight_m: float = field(init=False)

    def __post_init__(self):
        n = len(self.original_ids)
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        deg = np.bincount(rows, weights=self.weights, minlength=n) + 2.0 * self.self_loops
        object.__setattr__(self, "degrees", deg)
        object.__setattr__(
            self, "total_weight_m", float(self.weights.sum() / 2.0 + self.self_loops.sum())
        )

    @property
    def node_count(self) -> int:
        return len(self.original_ids)

    @property
    def m(self) -> float:
        return self.total_weight_m

    @property
    def edge_count(self) -> int:
        """Number of distinct unordered non-loop edges."""
        return len(self.indices) // 2

    def neighbors(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[u], self.indptr[u + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def degree(self, u: int) -> float:
        return degree(self, u)

    def row_index(self) -> np.ndarray:
        """Source node of every CSR entry."""
        return np.repeat(np.arange(self.node_count), np.diff(self.indptr))

    def adjacency_matrix(self, include_self_loops: bool = False) -> sp.csr_matrix:
        """Sparse symmetric A. With self-loops, ``A_ii = 2 * self_loop(i)`` so rows sum to degrees."""
        n = self.node_count
        a = sp.csr_matrix((self.weights, self.indices, self.indptr), shape=(n, n))
        if include_self_loops and self.self_loops.any():
            a = (a + sp.diags(2.0 * self.self_loops)).tocsr()
        return a

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Unordered edges ``(u, v, w)`` with ``u < v``, ascending."""
        rows = self.row_index()
        keep = rows < self.indices
        return rows[keep], self.indices[keep], self.weights[keep]

    def unweighted_degrees(self) -> np.ndarray:
        return np.diff(self.indptr) + 2 * (self.self_loops > 0)

    def subgraph(self, nodes: np.ndarray) -> Graph:
        """Induced subgraph on ``nodes`` (sorted ascending), keeping original labels."""
        nodes = np.asarray(nodes, dtype=np.int64)
        sub = self.adjacency_matrix()[nodes][:, nodes].tocsr()
        sub.sort_indices()
        return Graph(
            original_ids=self.original_ids[nodes],
            indptr=sub.indptr.astype(np.int64),
            indices=sub.indices.astype(np.int64),
            weights=sub.data.astype(float),
            self_loops=self.self_loops[nodes].copy(),
        )

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        weights: Iterable[float] | None = None,
        self_loops: Iterable[float] | None = None,
        original_ids: Iterable[int] | None = None,
    ) -> Graph:
        """Build from index pairs. Repeated pairs have their weights summed; ``(u, u)`` pairs
        add to the self-loop weight."""
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        w = np.ones(len(e)) if weights is None else np.asarray(list(weights), dtype=float)
        if len(w) != len(e):
            raise ValueError("weights and edges differ in length")
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise IndexError("edge endpoint out of range")
        if (w < 0).any():
            raise ValueError("negative edge weight")
        loops = np.zeros(n) if self_loops is None else np.asarray(list(self_loops), dtype=float)
        loop_mask = e[:, 0] == e[:, 1]
        loops = loops + np.bincount(e[loop_mask, 0], weights=w[loop_mask], minlength=n)
        e, w = e[~loop_mask], w[~loop_mask]
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        a = sp.coo_matrix((np.concatenate([w, w]), (rows, cols)), shape=(n, n)).tocsr()
        a.sum_duplicates()
        a.sort_indices()
        ids = np.arange(n) if original_ids is None else np.asarray(list(original_ids), dtype=np.int64)
        return cls(
            original_ids=ids,
            indptr=a.indptr.astype(np.int64),
            indices=a.indices.astype(np.int64),
            weights=a.data.astype(float),
            self_loops=loops,
        )


@dataclass(frozen=True)
class ComponentLabeling:
    component_of: np.ndarray
    component_count: int

    def members(self) -> list[np.ndarray]:
        order = np.argsort(self.component_of, kind="stable")
        bounds = np.cumsum(np.bincount(self.component_of, minlength=self.component_count))
        return np.split(order, bounds[:-1])


Source = Union[bytes, str, BinaryIO]


def parse_edge_list(source: Source) -> Graph:
    """Parse a whitespace-separated edge list.

    Duplicate and reversed edges collapse to a single weight-1 edge. Self-loop
    lines are dropped with a warning.
    """
    if isinstance(source, str):
        source = source.encode()
    stream = io.BytesIO(source) if isinstance(source, (bytes, bytearray)) else source

    us: list[int] = []
    vs: list[int] = []
    loops = 0
    lineno = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(b"#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 2 node labels, got {len(parts)}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer node label in {line.decode(errors='replace')!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError("node labels must be non-negative", lineno)
        if u == v:
            loops += 1
            continue
        us.append(u)
        vs.append(v)

    if not us:
        raise ParseError(f"no edges found in input ({lineno} line(s) read)")
    if loops:
        warnings.warn(f"ignored {loops} self-loop line(s)", stacklevel=2)

    raw_u = np.asarray(us, dtype=np.int64)
    raw_v = np.asarray(vs, dtype=np.int64)
    labels, inv = np.unique(np.concatenate([raw_u, raw_v]), return_inverse=True)
    u, v = inv[: len(us)], inv[len(us):]
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    pairs = np.unique(np.stack([lo, hi], axis=1), axis=0)
    return Graph.from_edges(len(labels), pairs, original_ids=labels)


def read_edge_list(path: str | Path) -> Graph:
    """Parse an edge-list file; ``.gz`` files are decompressed transparently."""
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rb") as fh:
        return parse_edge_list(fh)


def serialize(g: Graph) -> str:
    """``"u v"`` per unordered edge, ascending, using original labels."""
    u, v, _ = g.edges()
    ids = g.original_ids
    return "".join(f"{ids[a]} {ids[b]}\n" for a, b in zip(u, v))


def degree(g: Graph, u: int) -> float:
    if not 0 <= u < g.node_count:
        raise IndexError(f"node index {u} out of range for {g.node_count} nodes")
    return float(g.degrees[u])


def connected_components(g: Graph) -> ComponentLabeling:
    count, labels = _cc(g.adjacency_matrix(), directed=False)
    # relabel so components are ordered by their smallest node
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(count, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(count)
    return ComponentLabeling(component_of=rank[labels], component_count=int(count))


def _labels_for(g: Graph, p: Partition | np.ndarray) -> tuple[np.ndarray, int]:
    labels = np.asarray(getattr(p, "community_of", p), dtype=np.int64)
    if len(labels) != g.node_count:
        raise ValueError(f"partition covers {len(labels)} nodes, graph has {g.node_count}")
    k = int(getattr(p, "community_count", labels.max() + 1 if len(labels) else 0))
    return labels, k


def cut_and_volume(g: Graph, p: Partition | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-community boundary weight and degree volume."""
    labels, k = _labels_for(g, p)
    rows = g.row_index()
    src, dst = labels[rows], labels[g.indices]
    crossing = src != dst
    cut = np.bincount(src[crossing], weights=g.weights[crossing], minlength=k)
    vol = np.bincount(labels, weights=g.degrees, minlength=k)
    return cut, vol


def aggregate(g: Graph, p: Partition | np.ndarray) -> Graph:
    """Collapse each community to one node. Intra-community weight becomes self-loop weight."""
    labels, k = _labels_for(g, p)
    rows = g.row_index()
    src, dst = labels[rows], labels[g.indices]
    inside = src == dst
    loops = np.bincount(labels, weights=g.self_loops, minlength=k)
    loops += np.bincount(src[inside], weights=g.weights[inside], minlength=k) / 2.0
    a = sp.coo_matrix(
        (g.weights[~inside], (src[~inside], dst[~inside])), shape=(k, k)
    ).tocsr()
    a.sum_duplicates()
    a.sort_indices()
    return Graph(
        original_ids=np.arange(k, dtype=np.int64),
        indptr=a.indptr.astype(np.int64),
        indices=a.indices.astype(np.int64),
        weights=a.data.astype(float),
        self_loops=loops,
    )
