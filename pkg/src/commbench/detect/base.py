from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import wraps

from ..partition import Partition


@dataclass(frozen=True)
class DetectParams:
    seed: int = 0
    k: int | None = None
    embed_dim: int = 32
    tolerance: float = 1e-10
    eig_tol: float = 1e-8
    max_iter: int = 10_000
    max_passes: int = 1_000
    kmeans_restarts: int = 8

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if self.tolerance <= 0 or self.eig_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.embed_dim < 1:
            raise ValueError("embed_dim must be >= 1")


@dataclass(frozen=True)
class DetectOutcome:
    partition: Partition
    objective_trace: tuple[float, ...]
    wall_time: float
    algorithm_name: str
    details: dict = field(default_factory=dict, compare=False)


def timed(name: str):
    """Wrap a ``(g, params, ...) -> (partition, trace[, details])`` routine into a DetectOutcome producer."""

    def deco(fn):
        @wraps(fn)
        def run(g, params: DetectParams | None = None, **kwargs) -> DetectOutcome:
            params = params or DetectParams()
            t0 = time.perf_counter()
            out = fn(g, params, **kwargs)
            elapsed = time.perf_counter() - t0
            partition, trace, *rest = out
            return DetectOutcome(
                partition=partition,
                objective_trace=tuple(float(x) for x in trace),
                wall_time=elapsed,
                algorithm_name=name,
                details=rest[0] if rest else {},
            )

        run.algorithm_name = name
        return run

    return deco
