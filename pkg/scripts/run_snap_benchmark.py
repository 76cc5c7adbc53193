"""Community counts and run times per algorithm over several seeds.

    python scripts/run_snap_benchmark.py data/facebook_combined.txt.gz --seeds 5

Prints one row per (algorithm, seed) and a per-algorithm summary; with
``--out`` the rows are also written as CSV.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import time
from pathlib import Path

from commbench.config import ALGORITHM_ORDER, DEFAULT_SEED
from commbench.detect import DetectParams, run, shared_embedding
from commbench.graph import read_edge_list
from commbench.metrics import modularity


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input", type=Path)
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="first seed")
    parser.add_argument("--k", type=int, default=15)
    parser.add_argument("--algos", default=",".join(ALGORITHM_ORDER))
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args(argv)

    start = time.perf_counter()
    g = read_edge_list(args.input)
    print(f"loaded {g.node_count} nodes, {g.edge_count} edges in {time.perf_counter() - start:.2f}s")
    start = time.perf_counter()
    e = shared_embedding(g, DetectParams(seed=args.seed))
    print(f"embedding dim {e.dim} in {time.perf_counter() - start:.1f}s")

    rows = []
    for name in args.algos.split(","):
        counts = []
        for s in range(args.seeds):
            params = DetectParams(seed=args.seed + s, k=args.k)
            out = run(name, g, params, embedding=e)
            q = modularity(g, out.partition)
            counts.append(out.partition.community_count)
            rows.append((name, args.seed + s, out.partition.community_count, q, out.wall_time))
            print(f"{name:>20} seed {args.seed + s:>4}: {counts[-1]:>4} communities  Q={q:.4f}  {out.wall_time:.1f}s")
        print(f"{name:>20} summary: min {min(counts)}, median {statistics.median(counts)}, max {max(counts)}")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["algorithm", "seed", "communities", "modularity", "seconds"])
            w.writerows((a, s, c, f"{q:.6f}", f"{t:.3f}") for a, s, c, q, t in rows)


if __name__ == "__main__":
    main()
