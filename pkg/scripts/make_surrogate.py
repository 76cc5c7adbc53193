"""Write a synthetic ego-network graph of roughly the SNAP Facebook size.

The real ``facebook_combined.txt`` is not redistributed with this package.
This surrogate is only for exercising runtimes and the pipeline end to end;
numbers measured on it say nothing about the real dataset.

    python scripts/make_surrogate.py data/surrogate.txt --seed 7
"""

from __future__ import annotations

import argparse

import numpy as np

EGO_SIZES = [1033, 786, 754, 547, 346, 226, 224, 159, 58, 51]


def surrogate_edges(seed: int = 7, bridge_nodes: int = 150) -> np.ndarray:
    rng = np.random.default_rng(seed)
    edges = []
    start = 0
    egos = []
    for size in EGO_SIZES:
        ego = start
        alters = np.arange(start + 1, start + 1 + size)
        egos.append(ego)
        edges.extend((ego, a) for a in alters)
        # circles inside each ego network
        n_circ = max(2, size // 70)
        cuts = np.sort(rng.choice(np.arange(1, size), n_circ - 1, replace=False))
        for circ in np.split(alters, cuts):
            c = len(circ)
            if c < 2:
                continue
            p_in = min(1.0, 18.0 / c + 0.04)
            iu = np.triu_indices(c, 1)
            keep = rng.random(len(iu[0])) < p_in
            edges.extend(zip(circ[iu[0][keep]], circ[iu[1][keep]]))
        n_out = int(size * 2.0)
        a = rng.choice(alters, n_out)
        b = rng.choice(alters, n_out)
        edges.extend((x, y) for x, y in zip(a, b) if x != y)
        start += size + 1
    n = start
    # a few hub-to-hub and cross-ego friendships
    for i in range(len(egos) - 1):
        edges.append((egos[i], egos[i + 1]))
    for _ in range(bridge_nodes):
        x, y = rng.integers(n, size=2)
        if x != y:
            edges.append((int(x), int(y)))
    e = np.array(edges, dtype=np.int64)
    e = np.sort(e, axis=1)
    return np.unique(e, axis=0)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    e = surrogate_edges(args.seed)
    with open(args.out, "w") as fh:
        fh.write("# synthetic ego-network surrogate\n")
        fh.writelines(f"{u} {v}\n" for u, v in e)
    print(f"wrote {len(e)} edges over {e.max() + 1} nodes to {args.out}")


if __name__ == "__main__":
    main()
