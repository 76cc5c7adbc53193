from __future__ import annotations

from ..graph import Graph
from ..spectral import Embedding
from .base import DetectOutcome, DetectParams
from .infomap import codelength, infomap
from .label_propagation import label_propagation
from .leading_eigenvector import leading_eigenvector
from .louvain import louvain
from .spectral import kmeans_communities, shared_embedding, spectral_communities

ALGORITHMS = {
    "louvain": louvain,
    "label_propagation": label_propagation,
    "infomap": infomap,
    "leading_eigenvector": leading_eigenvector,
    "spectral": spectral_communities,
    "kmeans": kmeans_communities,
}


def run(name: str, g: Graph, params: DetectParams, embedding: Embedding | None = None) -> DetectOutcome:
    if name not in ALGORITHMS:
        raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    if name == "kmeans":
        return kmeans_communities(g, params, embedding=embedding)
    return ALGORITHMS[name](g, params)


__all__ = [
    "ALGORITHMS",
    "DetectOutcome",
    "DetectParams",
    "codelength",
    "infomap",
    "kmeans_communities",
    "label_propagation",
    "leading_eigenvector",
    "louvain",
    "run",
    "shared_embedding",
    "spectral_communities",
]
