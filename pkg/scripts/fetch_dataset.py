"""Download the SNAP ego-Facebook edge list and check its size.

    python scripts/fetch_dataset.py            # writes data/facebook_combined.txt.gz

The tests pick the file up from ``data/`` (or from $COMMBENCH_DATASET).
"""

from __future__ import annotations

import argparse
import hashlib
import shutil
import sys
import urllib.request
from pathlib import Path

from commbench.graph import read_edge_list

URL = "https://snap.stanford.edu/data/facebook_combined.txt.gz"
EXPECTED_NODES, EXPECTED_EDGES = 4039, 88234


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--url", default=URL)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "data" / "facebook_combined.txt.gz")
    args = parser.parse_args(argv)

    args.out.parent.mkdir(parents=True, exist_ok=True)
    tmp = args.out.with_suffix(args.out.suffix + ".part")
    try:
        with urllib.request.urlopen(args.url, timeout=60) as resp, open(tmp, "wb") as fh:
            shutil.copyfileobj(resp, fh)
    except OSError as exc:
        print(f"download failed: {exc}", file=sys.stderr)
        tmp.unlink(missing_ok=True)
        return 1
    tmp.replace(args.out)

    digest = hashlib.sha256(args.out.read_bytes()).hexdigest()
    g = read_edge_list(args.out)
    print(f"{args.out}: sha256 {digest}")
    print(f"nodes {g.node_count}, edges {g.edge_count}")
    if (g.node_count, g.edge_count) != (EXPECTED_NODES, EXPECTED_EDGES):
        print(f"warning: expected {EXPECTED_NODES} nodes and {EXPECTED_EDGES} edges", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
