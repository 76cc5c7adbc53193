"""Louvain modularity optimisation: greedy local moves followed by aggregation."""

from __future__ import annotations

import numpy as np

from ..graph import Graph, aggregate
from ..metrics import modularity
from ..partition import canonicalize
from .base import DetectParams, timed


def _adjacency_lists(g: Graph) -> tuple[list[list[int]], list[list[float]]]:
    ind, wts, ptr = g.indices.tolist(), g.weights.tolist(), g.indptr.tolist()
    return (
        [ind[ptr[u]:ptr[u + 1]] for u in range(g.node_count)],
        [wts[ptr[u]:ptr[u + 1]] for u in range(g.node_count)],
    )


def local_moves(g: Graph, rng: np.random.Generator, tol: float, max_sweeps: int) -> tuple[np.ndarray, int]:
    """One level of greedy node moves. Returns community labels and the number of moves made."""
    n = g.node_count
    m = g.m
    two_m = 2.0 * m
    nbrs, wts = _adjacency_lists(g)
    deg = g.degrees.tolist()
    comm = list(range(n))
    vol = list(deg)
    order = rng.permutation(n).tolist()
    total_moves = 0
    for _ in range(max_sweeps):
        moved = 0
        for u in order:
            cu = comm[u]
            ku = deg[u]
            links: dict[int, float] = {}
            for v, w in zip(nbrs[u], wts[u]):
                c = comm[v]
                links[c] = links.get(c, 0.0) + w
            vol[cu] -= ku
            # gain of inserting the isolated node into c, in units of m * dQ
            best_c = cu
            best_gain = links.get(cu, 0.0) - vol[cu] * ku / two_m
            stay_gain = best_gain
            for c, w in links.items():
                gain = w - vol[c] * ku / two_m
                if gain > best_gain:
                    best_c, best_gain = c, gain
            if best_c != cu and (best_gain - stay_gain) / m <= tol:
                best_c = cu
            vol[best_c] += ku
            if best_c != cu:
                comm[u] = best_c
                moved += 1
        total_moves += moved
        if not moved:
            break
    return np.asarray(comm, dtype=np.int64), total_moves


@timed("louvain")
def louvain(g: Graph, params: DetectParams):
    if g.m <= 0:
        raise ValueError("louvain needs a graph with positive total weight")
    rng = np.random.default_rng(params.seed)
    membership = np.arange(g.node_count, dtype=np.int64)
    level = g
    trace = [modularity(g, membership)]
    for _ in range(params.max_passes):
        labels, moves = local_moves(level, rng, params.tolerance, params.max_passes)
        if moves == 0:
            break
        p = canonicalize(labels)
        membership = p.community_of[membership]
        trace.append(modularity(g, membership))
        level = aggregate(level, p)
        if level.node_count == 1:
            break
    return canonicalize(membership), trace
