from __future__ import annotations

import numpy as np

from ..graph import Graph
from ..metrics import modularity
from ..partition import canonicalize
from .base import DetectParams, timed
from .louvain import _adjacency_lists


@timed("label_propagation")
def label_propagation(g: Graph, params: DetectParams):
    """Asynchronous label propagation.

    Every node starts with its own label. Sweeps visit nodes in a freshly
    shuffled order and give each node the label carrying the most neighbour
    weight; a node whose current label is among the maxima keeps it, other
    ties are broken uniformly at random. Stops after a sweep with no change.
    """
    if g.m <= 0:
        raise ValueError("label propagation needs a graph with positive total weight")
    rng = np.random.default_rng(params.seed)
    n = g.node_count
    nbrs, wts = _adjacency_lists(g)
    labels = list(range(n))
    trace = []
    sweeps = 0
    for sweeps in range(1, params.max_passes + 1):
        changed = 0
        for u in rng.permutation(n).tolist():
            if not nbrs[u]:
                continue
            tally: dict[int, float] = {}
            for v, w in zip(nbrs[u], wts[u]):
                tally[labels[v]] = tally.get(labels[v], 0.0) + w
            top = max(tally.values())
            best = [lab for lab, w in tally.items() if w >= top - 1e-12 * top]
            if labels[u] in best:
                continue
            labels[u] = best[0] if len(best) == 1 else best[int(rng.integers(len(best)))]
            changed += 1
        trace.append(modularity(g, labels))
        if not changed:
            break
    return canonicalize(labels), trace, {"sweeps": sweeps}
