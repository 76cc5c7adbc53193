from collections import Counter

import numpy as np
import pytest

from commbench.detect import (
    ALGORITHMS,
    DetectParams,
    codelength,
    infomap,
    kmeans_communities,
    label_propagation,
    leading_eigenvector,
    louvain,
    run,
    spectral_communities,
)
from commbench.graph import Graph, parse_edge_list
from commbench.metrics import modularity
from commbench.partition import canonicalize, singletons

from conftest import random_graph
from oracles import (
    dense_adjacency,
    exhaustive_max_modularity,
    map_equation_entropy_form,
)

TRIANGLES = [0, 0, 0, 1, 1, 1]


def labels(outcome):
    return outcome.partition.community_of.tolist()


def test_louvain_b6(b6):
    out = louvain(b6, DetectParams(seed=0))
    assert labels(out) == TRIANGLES
    assert out.objective_trace[-1] == pytest.approx(5 / 14, abs=1e-12)
    assert out.algorithm_name == "louvain"
    assert out.wall_time >= 0


def test_louvain_triangle(k3):
    for seed in range(10):
        assert labels(louvain(k3, DetectParams(seed=seed))) == [0, 0, 0]


def test_louvain_trace_strictly_increasing():
    rng = np.random.default_rng(0)
    for t in range(20):
        g = random_graph(rng, 60, 0.08)
        trace = louvain(g, DetectParams(seed=t)).objective_trace
        assert trace[0] == pytest.approx(modularity(g, singletons(g.node_count)))
        assert np.all(np.diff(trace) > 0)


def test_louvain_near_exhaustive_optimum():
    rng = np.random.default_rng(12)
    for _ in range(15):
        n = int(rng.integers(4, 11))
        g = random_graph(rng, n, 0.4, connected=True)
        best_q, _ = exhaustive_max_modularity(dense_adjacency(g))
        found = max(modularity(g, louvain(g, DetectParams(seed=s)).partition) for s in range(20))
        assert found >= 0.9 * best_q - 1e-12


def test_label_propagation_b6_modal(b6):
    tally = Counter(tuple(labels(label_propagation(b6, DetectParams(seed=s)))) for s in range(100))
    assert tally.most_common(1)[0][0] == tuple(TRIANGLES)


def test_label_propagation_star(star):
    for seed in range(20):
        assert labels(label_propagation(star, DetectParams(seed=seed))) == [0] * 5


def test_label_propagation_disconnected_never_merges():
    g = parse_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
    for seed in range(10):
        lab = labels(label_propagation(g, DetectParams(seed=seed)))
        assert set(lab[:3]).isdisjoint(lab[3:])


def test_codelength_single_module_is_node_entropy(b6):
    p = b6.degrees / b6.degrees.sum()
    assert codelength(b6, [0] * 6) == pytest.approx(-(p * np.log2(p)).sum(), abs=1e-12)


def test_codelength_matches_entropy_oracle():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(2, 15))
        g = random_graph(rng, n, 0.4)
        if g.m == 0:
            continue
        lab = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
        lab = canonicalize(lab).community_of
        assert codelength(g, lab) == pytest.approx(map_equation_entropy_form(dense_adjacency(g), lab), abs=1e-12)


def test_infomap_b6(b6):
    out = infomap(b6, DetectParams(seed=0))
    assert labels(out) == TRIANGLES
    assert codelength(b6, TRIANGLES) < codelength(b6, [0] * 6)
    assert out.details["codelength"] == pytest.approx(codelength(b6, TRIANGLES), abs=1e-12)


def test_infomap_trace_non_increasing():
    rng = np.random.default_rng(1)
    for t in range(20):
        g = random_graph(rng, 40, 0.12, connected=True)
        out = infomap(g, DetectParams(seed=t))
        trace = np.array(out.objective_trace)
        assert np.all(np.diff(trace) <= 1e-12)
        assert trace[-1] <= codelength(g, [0] * g.node_count) + 1e-12
        assert trace[-1] == pytest.approx(codelength(g, out.partition), abs=1e-12)


def test_infomap_per_component():
    g = parse_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n5 6\n")
    for seed in range(5):
        lab = labels(infomap(g, DetectParams(seed=seed)))
        assert set(lab[:3]).isdisjoint(lab[3:])
    iso = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    lab = labels(infomap(iso, DetectParams()))
    assert lab == [0, 0, 0, 1]


def test_leading_eigenvector_k2(k2):
    out = leading_eigenvector(k2, DetectParams())
    assert labels(out) == [0, 0]
    assert out.details["split_gains"] == []


def test_leading_eigenvector_b6(b6):
    out = leading_eigenvector(b6, DetectParams())
    assert labels(out) == TRIANGLES
    assert out.objective_trace[-1] == pytest.approx(5 / 14, abs=1e-12)


def test_leading_eigenvector_splits_gain():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = random_graph(rng, 50, 0.1)
        out = leading_eigenvector(g, DetectParams())
        assert all(gain > 0 for gain in out.details["split_gains"])
        assert np.all(np.diff(out.objective_trace) > 0)
        assert out.objective_trace[-1] == pytest.approx(modularity(g, out.partition), abs=1e-10)


@pytest.mark.parametrize("fn", [spectral_communities, kmeans_communities])
def test_embedding_clusterers_b6(fn, b6):
    assert labels(fn(b6, DetectParams(seed=0, k=2))) == TRIANGLES


@pytest.mark.parametrize("fn", [spectral_communities, kmeans_communities])
def test_embedding_clusterers_two_edges(fn):
    g = parse_edge_list("0 1\n2 3\n")
    assert labels(fn(g, DetectParams(seed=0, k=2))) == [0, 0, 1, 1]


def test_kmeans_k1(b6):
    assert labels(kmeans_communities(b6, DetectParams(k=1))) == [0] * 6


def test_spectral_needs_two_clusters(b6):
    with pytest.raises(ValueError):
        spectral_communities(b6, DetectParams(k=1))


def test_params_validation():
    with pytest.raises(ValueError):
        DetectParams(k=0)
    with pytest.raises(ValueError):
        DetectParams(tolerance=0)


@pytest.mark.parametrize("name", list(ALGORITHMS))
def test_every_algorithm_is_deterministic_and_canonical(name):
    g = random_graph(np.random.default_rng(9), 80, 0.06)
    params = DetectParams(seed=7, k=4, embed_dim=8)
    a, b = run(name, g, params), run(name, g, params)
    assert a.partition == b.partition
    assert list(a.objective_trace) == list(b.objective_trace)
    assert canonicalize(a.partition.community_of) == a.partition
    assert len(a.partition.community_of) == g.node_count
    assert a.algorithm_name == name


def test_run_unknown():
    with pytest.raises(KeyError):
        run("girvan_newman", parse_edge_list("0 1\n"), DetectParams())
