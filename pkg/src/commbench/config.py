from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

ALGORITHM_ORDER = (
    "louvain",
    "label_propagation",
    "infomap",
    "leading_eigenvector",
    "spectral",
    "kmeans",
)
# per-algorithm seed = master seed + offset; the shared embedding uses the master seed
SEED_OFFSETS = {name: i + 1 for i, name in enumerate(ALGORITHM_ORDER)}
FORMATS = ("csv", "json", "svg")
DEFAULT_SEED = 42


@dataclass(frozen=True)
class RunConfig:
    input: Path
    out: Path
    algorithms: tuple[str, ...] = ALGORITHM_ORDER
    seed: int = DEFAULT_SEED
    k_kmeans: int = 15
    k_spectral: int = 15
    embed_dim: int = 32
    silhouette_sample: int | None = None
    formats: tuple[str, ...] = FORMATS
    record_timing: bool = True
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        unknown = set(self.algorithms) - set(ALGORITHM_ORDER)
        if unknown:
            raise ValueError(f"unknown algorithm(s): {', '.join(sorted(unknown))}")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise ValueError(f"unknown format(s): {', '.join(sorted(bad))}")
        if self.k_kmeans < 1 or self.k_spectral < 2:
            raise ValueError("k must be >= 1 for kmeans and >= 2 for spectral")
        if self.embed_dim < 1:
            raise ValueError("embed_dim must be >= 1")
        if self.silhouette_sample is not None and self.silhouette_sample < 2:
            raise ValueError("silhouette sample must be >= 2")

    def algorithm_seed(self, name: str) -> int:
        return self.seed + SEED_OFFSETS[name]

    def k_for(self, name: str) -> int | None:
        return {"kmeans": self.k_kmeans, "spectral": self.k_spectral}.get(name)

    def echo(self) -> dict:
        return {
            "input": str(self.input),
            "algorithms": list(self.algorithms),
            "seed": self.seed,
            "k_kmeans": self.k_kmeans,
            "k_spectral": self.k_spectral,
            "embed_dim": self.embed_dim,
            "silhouette_sample": self.silhouette_sample,
            "formats": list(self.formats),
            "record_timing": self.record_timing,
        }
