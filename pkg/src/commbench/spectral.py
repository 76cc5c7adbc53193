"""Symmetric eigensolver, spectral node embedding and k-means.

The eigensolver is a block power iteration: a shifted block of vectors is
repeatedly multiplied by the operator, re-orthonormalised and rotated by a
Rayleigh-Ritz step. Leading Ritz pairs whose residual falls below tolerance
are locked, and the remaining block is kept orthogonal to them.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Literal, Union

import numpy as np
import scipy.sparse as sp

from .graph import Graph

Operator = Union[np.ndarray, sp.spmatrix, Callable[[np.ndarray], np.ndarray]]


class ConvergenceError(ArithmeticError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray
    vectors: np.ndarray
    iterations: int
    residual: float


def _as_operator(op: Operator, n: int | None) -> tuple[Callable[[np.ndarray], np.ndarray], int]:
    if callable(op) and not isinstance(op, (np.ndarray, sp.spmatrix)):
        if n is None:
            raise ValueError("n is required for callable operators")
        return op, n
    if op.shape[0] != op.shape[1]:
        raise ValueError("operator must be square")
    return (lambda x: op @ x), op.shape[0]


def estimate_norm(matvec: Callable[[np.ndarray], np.ndarray], n: int, rng: np.random.Generator,
                  steps: int = 40) -> float:
    v = rng.standard_normal((n, 1))
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(steps):
        w = matvec(v)
        est = float(np.linalg.norm(w))
        if est == 0.0:
            return 0.0
        v = w / est
    return est


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def top_eigenpairs(
    matvec: Operator,
    count: int,
    tol: float = 1e-8,
    max_iter: int = 10_000,
    seed: int = 0,
    *,
    n: int | None = None,
    shift: float | None = None,
    block_size: int | None = None,
) -> EigenResult:
    """The ``count`` algebraically largest eigenpairs of a symmetric operator.

    ``matvec`` may be a dense array, a sparse matrix, or a callable mapping an
    ``(n, p)`` block to ``M @ block``. ``shift`` must make ``M + shift*I``
    positive semi-definite; by default it is a power-iteration estimate of
    ``||M||``, which also serves as the scale for the residual test
    ``||M v - lambda v|| <= tol * scale``.
    """
    op, n = _as_operator(matvec, n)
    if not 1 <= count <= n:
        raise ValueError(f"count must be in [1, {n}], got {count}")
    rng = np.random.default_rng(seed)
    norm = estimate_norm(op, n, rng)
    if shift is None:
        shift = norm
    scale = max(norm, abs(shift), np.finfo(float).tiny)
    p = min(n, block_size or max(2 * count, count + 8))
    p = max(p, count)

    locked_vecs = np.zeros((n, 0))
    locked_vals: list[float] = []
    locked_res: list[float] = []
    q, _ = np.linalg.qr(rng.standard_normal((n, p)))
    it = 0
    while True:
        z = op(q)
        h = q.T @ z
        theta, w = np.linalg.eigh((h + h.T) / 2.0)
        theta, w = theta[::-1], w[:, ::-1]
        q, z = q @ w, z @ w
        res = np.linalg.norm(z - q * theta, axis=0)

        need = count - len(locked_vals)
        ok = res[:need] <= tol * scale
        nconv = need if ok.all() else int(np.argmin(ok))
        if nconv:
            locked_vecs = np.hstack([locked_vecs, q[:, :nconv]])
            locked_vals.extend(theta[:nconv].tolist())
            locked_res.extend(res[:nconv].tolist())
        if len(locked_vals) == count:
            break
        it += 1
        if it >= max_iter:
            raise ConvergenceError("eigensolver did not converge", float(res[:need].max()), it)

        y = z[:, nconv:] + shift * q[:, nconv:]
        for _ in range(2):
            y -= locked_vecs @ (locked_vecs.T @ y)
        q, _ = np.linalg.qr(y)

    order = np.argsort(-np.asarray(locked_vals), kind="stable")
    return EigenResult(
        values=np.asarray(locked_vals)[order],
        vectors=_fix_signs(locked_vecs[:, order]),
        iterations=it,
        residual=float(max(locked_res)),
    )


@dataclass(frozen=True, eq=False)
class Embedding:
    coords: np.ndarray
    kind: Literal["laplacian_rows", "row_normalized"] = "laplacian_rows"
    eigenvalues: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.coords.shape[0]

    def row_normalized(self) -> Embedding:
        norms = np.linalg.norm(self.coords, axis=1)
        out = np.zeros_like(self.coords)
        nz = norms > 0
        out[nz] = self.coords[nz] / norms[nz, None]
        out[~nz, 0] = 1.0
        return replace(self, coords=out, kind="row_normalized")

    def checksum(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.coords, dtype="<f8").tobytes()).hexdigest()


def normalized_adjacency(g: Graph) -> sp.csr_matrix:
    """``D^-1/2 A D^-1/2``; rows and columns of zero-degree nodes are zero."""
    d = g.degrees
    inv = np.zeros_like(d)
    inv[d > 0] = d[d > 0] ** -0.5
    s = sp.diags(inv)
    return (s @ g.adjacency_matrix(include_self_loops=True) @ s).tocsr()


def spectral_embedding(
    g: Graph,
    dim: int,
    tol: float = 1e-8,
    max_iter: int = 10_000,
    seed: int = 0,
    positive_only: bool = True,
) -> Embedding:
    """Rows of the top ``dim`` eigenvectors of the normalised adjacency operator.

    With ``positive_only`` the eigenvectors whose eigenvalue is not positive are
    dropped (at least one column is always kept), so the returned dimension
    can be smaller than requested on small graphs.
    """
    n = g.node_count
    if not 1 <= dim < n:
        raise ValueError(f"dim must be in [1, {n - 1}], got {dim}")
    res = top_eigenpairs(normalized_adjacency(g), dim, tol=tol, max_iter=max_iter, seed=seed, shift=1.0)
    vals, vecs = res.values, res.vectors
    if positive_only:
        keep = max(1, int(np.sum(vals > tol)))
        vals, vecs = vals[:keep], vecs[:, :keep]
    vecs = vecs.copy()
    vecs[g.degrees == 0] = 0.0
    return Embedding(coords=vecs, kind="laplacian_rows", eigenvalues=vals)


def write_embedding_csv(path: str | Path, g: Graph, e: Embedding) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node"] + [f"c{i}" for i in range(e.dim)])
        for label, row in zip(g.original_ids, e.coords):
            w.writerow([int(label)] + [repr(float(x)) for x in row])


@dataclass(frozen=True, eq=False)
class KMeansResult:
    assignment: np.ndarray
    centroids: np.ndarray
    inertia: float
    iterations: int
    inertia_trace: tuple[float, ...] = ()


def _sq_dists(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = (x * x).sum(1)[:, None] - 2.0 * x @ centers.T + (centers * centers).sum(1)[None, :]
    return np.maximum(d2, 0.0)


def _plusplus(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(x)
    centers = [x[rng.integers(n)]]
    closest = ((x - centers[0]) ** 2).sum(1)
    for _ in range(1, k):
        total = closest.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(np.searchsorted(np.cumsum(closest), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        centers.append(x[idx])
        closest = np.minimum(closest, ((x - x[idx]) ** 2).sum(1))
    return np.array(centers)


def _centroids(x: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=k).astype(float)
    sums = np.stack([np.bincount(labels, weights=x[:, j], minlength=k) for j in range(x.shape[1])], axis=1)
    return sums / counts[:, None]


def _lloyd(x: np.ndarray, k: int, rng: np.random.Generator, max_iter: int) -> KMeansResult:
    centers = _plusplus(x, k, rng)
    labels = None
    trace = []
    it = 0
    for it in range(1, max_iter + 1):
        d2 = _sq_dists(x, centers)
        new = np.argmin(d2, axis=1)
        own = d2[np.arange(len(x)), new]
        counts = np.bincount(new, minlength=k)
        for j in np.flatnonzero(counts == 0):
            # take the worst-served point from a cluster that can spare one
            donor_ok = counts[new] > 1
            i = int(np.argmax(np.where(donor_ok, own, -1.0)))
            counts[new[i]] -= 1
            new[i] = j
            counts[j] = 1
            own[i] = 0.0
        centers = _centroids(x, new, k)
        trace.append(float(((x - centers[new]) ** 2).sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
    return KMeansResult(new, centers, trace[-1], it, tuple(trace))


def kmeans(
    points: Embedding | np.ndarray,
    k: int,
    seed: int = 0,
    max_iter: int = 300,
    restarts: int = 8,
) -> KMeansResult:
    """Lloyd's algorithm from k-means++ seeds; the lowest-inertia restart wins.

    Points are sorted lexicographically before seeding so the result does not
    depend on input order.
    """
    x = np.asarray(points.coords if isinstance(points, Embedding) else points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n = len(x)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    order = np.lexsort(x.T[::-1])
    xs = x[order]
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        res = _lloyd(xs, k, rng, max_iter)
        if best is None or res.inertia < best.inertia:
            best = res
    assignment = np.empty(n, dtype=np.int64)
    assignment[order] = best.assignment
    return replace(best, assignment=assignment)
