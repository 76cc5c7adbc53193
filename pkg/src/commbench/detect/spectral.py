from __future__ import annotations

from ..graph import Graph
from ..partition import canonicalize
from ..spectral import Embedding, kmeans, spectral_embedding
from .base import DetectParams, timed

KMEANS_DEFAULT_K = 15
SPECTRAL_DEFAULT_K = 15


def shared_embedding(g: Graph, params: DetectParams, seed: int | None = None) -> Embedding:
    """The embedding used by k-means detection and by the geometric metrics."""
    dim = min(params.embed_dim, g.node_count - 1)
    return spectral_embedding(g, dim, tol=params.eig_tol, max_iter=params.max_iter,
                              seed=params.seed if seed is None else seed)


@timed("spectral")
def spectral_communities(g: Graph, params: DetectParams):
    """Normalised spectral clustering: k leading eigenvectors, unit-length rows, then k-means."""
    k = SPECTRAL_DEFAULT_K if params.k is None else params.k
    if k < 2:
        raise ValueError("spectral clustering needs k >= 2")
    if k > g.node_count:
        raise ValueError(f"k={k} exceeds node count {g.node_count}")
    emb = spectral_embedding(g, min(k, g.node_count - 1), tol=params.eig_tol,
                             max_iter=params.max_iter, seed=params.seed)
    res = kmeans(emb.row_normalized(), k, seed=params.seed, restarts=params.kmeans_restarts)
    return canonicalize(res.assignment), res.inertia_trace, {"inertia": res.inertia, "embed_dim": emb.dim}


@timed("kmeans")
def kmeans_communities(g: Graph, params: DetectParams, embedding: Embedding | None = None):
    """k-means directly on the shared (not row-normalised) spectral embedding."""
    k = KMEANS_DEFAULT_K if params.k is None else params.k
    emb = shared_embedding(g, params) if embedding is None else embedding
    res = kmeans(emb, k, seed=params.seed, restarts=params.kmeans_restarts)
    return canonicalize(res.assignment), res.inertia_trace, {"inertia": res.inertia}
