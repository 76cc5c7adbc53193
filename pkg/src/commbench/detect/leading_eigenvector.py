from __future__ import annotations

from collections import deque

import numpy as np

from ..graph import Graph
from ..partition import canonicalize
from ..spectral import top_eigenpairs
from .base import DetectParams, timed


def group_modularity_operator(a, k: np.ndarray, two_m: float, group: np.ndarray):
    """Matrix-free ``B^(G) x`` for node group ``group``.

    ``B^(G)_ij = B_ij - delta_ij * sum_{l in G} B_il`` with ``B = A - k k^T / 2m``.
    """
    a_g = a[group][:, group].tocsr()
    k_g = k[group]
    diag = np.asarray(a_g.sum(axis=1)).ravel() - k_g * k_g.sum() / two_m

    def apply(x: np.ndarray) -> np.ndarray:
        x2 = x if x.ndim == 2 else x[:, None]
        y = a_g @ x2 - np.outer(k_g, k_g @ x2) / two_m - diag[:, None] * x2
        return y if x.ndim == 2 else y[:, 0]

    return apply


@timed("leading_eigenvector")
def leading_eigenvector(g: Graph, params: DetectParams):
    """Recursive spectral bisection on the modularity matrix.

    A group is split by the signs of the leading eigenvector of its group
    modularity operator (zero entries go to the positive side). Groups whose
    leading eigenvalue is not positive, or whose split would not raise
    modularity, are final.
    """
    if g.m <= 0:
        raise ValueError("leading eigenvector needs a graph with positive total weight")
    a = g.adjacency_matrix(include_self_loops=True)
    k = g.degrees
    two_m = 2.0 * g.m
    labels = np.zeros(g.node_count, dtype=np.int64)
    next_label = 1
    q = 0.0
    trace = [q]
    gains = []
    queue = deque([np.arange(g.node_count)])
    solves = 0
    while queue:
        group = queue.popleft()
        if len(group) < 2:
            continue
        op = group_modularity_operator(a, k, two_m, group)
        res = top_eigenpairs(op, 1, tol=params.eig_tol, max_iter=params.max_iter,
                             seed=params.seed + solves, n=len(group))
        solves += 1
        if res.values[0] <= params.eig_tol:
            continue
        s = np.where(res.vectors[:, 0] >= 0, 1.0, -1.0)
        gain = float(s @ op(s)) / (2.0 * two_m)
        if gain <= params.tolerance:
            continue
        pos, neg = group[s > 0], group[s < 0]
        labels[neg] = next_label
        next_label += 1
        q += gain
        trace.append(q)
        gains.append(gain)
        queue.append(pos)
        queue.append(neg)
    return canonicalize(labels), trace, {"split_gains": gains, "eigensolves": solves}
