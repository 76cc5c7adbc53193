"""Two-level map equation and its greedy minimisation.

For an undirected random walk the node visit rates are ``degree / 2m`` and a
module is exited at rate ``cut / 2m``. With ``plogp(x) = x log2 x`` the code
length of a partition is::

    L = plogp(sum_i q_i) - 2 sum_i plogp(q_i) - sum_a plogp(p_a) + sum_i plogp(q_i + p_i)

where ``q_i`` is the exit rate of module i and ``p_i`` its total visit rate.
"""

from __future__ import annotations

import math

import numpy as np

from ..graph import Graph, aggregate, connected_components, cut_and_volume
from ..partition import canonicalize
from .base import DetectParams, timed
from .louvain import _adjacency_lists


def _plogp(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def codelength(g: Graph, p, node_flow: np.ndarray | None = None) -> float:
    """Map-equation code length in bits of partition ``p`` on ``g``.

    ``node_flow`` overrides the per-node visit rates used in the node entropy
    term; it is needed when ``g`` is an aggregated graph whose nodes are not
    the original random-walk states.
    """
    if g.m <= 0:
        raise ValueError("code length is undefined for a graph without edges")
    p = canonicalize(p)
    two_m = 2.0 * g.m
    cut, vol = cut_and_volume(g, p)
    q = cut / two_m
    flow = g.degrees / two_m if node_flow is None else node_flow
    return (
        _plogp(math.fsum(q.tolist()))
        - 2.0 * math.fsum(_plogp(x) for x in q.tolist())
        - math.fsum(_plogp(x) for x in flow.tolist())
        + math.fsum(_plogp(x) for x in (q + vol / two_m).tolist())
    )


def _map_moves(g: Graph, two_m: float, rng: np.random.Generator, tol: float,
               max_sweeps: int) -> tuple[np.ndarray, int]:
    n = g.node_count
    nbrs, wts = _adjacency_lists(g)
    deg = g.degrees.tolist()
    loops = g.self_loops.tolist()
    comm = list(range(n))
    vol = list(deg)
    inner = list(loops)

    def exit_rate(v: float, w_in: float) -> float:
        return max(v - 2.0 * w_in, 0.0) / two_m

    order = rng.permutation(n).tolist()
    total_moves = 0
    for _ in range(max_sweeps):
        exits = [exit_rate(vol[c], inner[c]) for c in range(n)]
        s_exit = math.fsum(exits)
        s_exit_log = math.fsum(_plogp(x) for x in exits)
        s_total_log = math.fsum(_plogp(exits[c] + vol[c] / two_m) for c in range(n))
        current = _plogp(s_exit) - 2.0 * s_exit_log + s_total_log
        moved = 0
        for u in order:
            a = comm[u]
            ku, lu = deg[u], loops[u]
            links: dict[int, float] = {}
            for v, w in zip(nbrs[u], wts[u]):
                c = comm[v]
                links[c] = links.get(c, 0.0) + w
            if not links or (len(links) == 1 and a in links):
                continue
            ex_a = exits[a]
            va_new = vol[a] - ku
            ia_new = inner[a] - links.get(a, 0.0) - lu
            ex_a_new = exit_rate(va_new, ia_new)
            # state with u removed from a (a shrinks, b unchanged)
            base_exit = s_exit - ex_a + ex_a_new
            base_exit_log = s_exit_log - _plogp(ex_a) + _plogp(ex_a_new)
            base_total_log = s_total_log - _plogp(ex_a + vol[a] / two_m) + _plogp(ex_a_new + va_new / two_m)

            best_b, best_len, best_state = a, current, None
            for b, w in links.items():
                if b == a:
                    continue
                ex_b = exits[b]
                vb_new = vol[b] + ku
                ib_new = inner[b] + w + lu
                ex_b_new = exit_rate(vb_new, ib_new)
                e_sum = base_exit - ex_b + ex_b_new
                e_log = base_exit_log - _plogp(ex_b) + _plogp(ex_b_new)
                t_log = base_total_log - _plogp(ex_b + vol[b] / two_m) + _plogp(ex_b_new + vb_new / two_m)
                length = _plogp(e_sum) - 2.0 * e_log + t_log
                if length < best_len:
                    best_b, best_len = b, length
                    best_state = (vb_new, ib_new, ex_b_new, e_sum, e_log, t_log)
            if best_b == a or current - best_len <= tol:
                continue
            vb_new, ib_new, ex_b_new, s_exit, s_exit_log, s_total_log = best_state
            vol[a], inner[a], exits[a] = va_new, ia_new, ex_a_new
            vol[best_b], inner[best_b], exits[best_b] = vb_new, ib_new, ex_b_new
            comm[u] = best_b
            current = best_len
            moved += 1
        total_moves += moved
        if not moved:
            break
    return np.asarray(comm, dtype=np.int64), total_moves


def _infomap_connected(g: Graph, params: DetectParams, rng: np.random.Generator) -> tuple[np.ndarray, list[float]]:
    two_m = 2.0 * g.m
    flow = g.degrees / two_m
    membership = np.arange(g.node_count, dtype=np.int64)
    level = g
    trace = [codelength(g, membership)]
    for _ in range(params.max_passes):
        labels, moves = _map_moves(level, two_m, rng, params.tolerance, params.max_passes)
        if moves == 0:
            break
        p = canonicalize(labels)
        membership = p.community_of[membership]
        trace.append(codelength(g, membership, node_flow=flow))
        level = aggregate(level, p)
        if level.node_count == 1:
            break
    # the greedy search can stall above the trivial one-module solution
    one = codelength(g, np.zeros(g.node_count, dtype=np.int64), node_flow=flow)
    if one < trace[-1]:
        membership = np.zeros(g.node_count, dtype=np.int64)
        trace.append(one)
    return canonicalize(membership).community_of, trace


@timed("infomap")
def infomap(g: Graph, params: DetectParams):
    """Greedy two-level map-equation minimisation, run separately on each connected component.

    For a disconnected graph the trace is the edge-weight-weighted mean of the
    per-component code lengths, level by level.
    """
    if g.m <= 0:
        raise ValueError("infomap needs a graph with positive total weight")
    rng = np.random.default_rng(params.seed)
    comps = connected_components(g)
    labels = np.empty(g.node_count, dtype=np.int64)
    offset = 0
    traces: list[tuple[float, list[float]]] = []
    for nodes in comps.members():
        sub = g.subgraph(nodes) if comps.component_count > 1 else g
        if sub.m <= 0:
            labels[nodes] = offset + np.arange(len(nodes))
            offset += len(nodes)
            continue
        local, trace = _infomap_connected(sub, params, rng)
        labels[nodes] = offset + local
        offset += int(local.max()) + 1
        traces.append((sub.m / g.m, trace))
    depth = max(len(t) for _, t in traces)
    combined = [
        math.fsum(w * t[min(i, len(t) - 1)] for w, t in traces) for i in range(depth)
    ]
    return canonicalize(labels), combined, {"codelength": combined[-1]}
