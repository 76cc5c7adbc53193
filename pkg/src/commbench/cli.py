"""``commbench analyze|detect|compare`` command-line entry point.

Exit codes: 0 ok, 1 usage error, 2 input parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, plots
from .analysis import degree_summary, top_hubs, degree_centrality, write_degree_tables
from .config import ALGORITHM_ORDER, DEFAULT_SEED, FORMATS, RunConfig
from .detect import DetectOutcome, DetectParams, run, shared_embedding
from .graph import Graph, ParseError, connected_components, read_edge_list
from .metrics import METRIC_NAMES, MetricReport, evaluate_all, write_metric_table
from .partition import Partition, top_k_communities, write_membership_csv
from .spectral import ConvergenceError, Embedding

log = logging.getLogger("commbench")

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3
RADAR_METRICS = ("modularity", "normalized_cut", "compactness", "calinski_harabasz", "separability")
PLOT_TOP = 15


class UsageError(Exception):
    pass


@dataclass
class ComparisonBundle:
    reports: list[MetricReport]
    partitions: dict[str, Partition]
    provenance: dict
    outcomes: dict[str, DetectOutcome] = field(default_factory=dict)


def file_sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def load_graph(path: Path) -> Graph:
    if not Path(path).is_file():
        raise UsageError(f"input file not found: {path}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = read_edge_list(path)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return g


def _params(cfg: RunConfig, name: str) -> DetectParams:
    return DetectParams(seed=cfg.algorithm_seed(name), k=cfg.k_for(name), embed_dim=cfg.embed_dim)


def _embedding(g: Graph, cfg: RunConfig) -> Embedding:
    return shared_embedding(g, DetectParams(seed=cfg.seed, embed_dim=cfg.embed_dim))


def _write_trace(path: Path, trace) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["pass", "objective"])
        w.writerows((i, repr(float(v))) for i, v in enumerate(trace))


def community_colors(p: Partition, top: int = PLOT_TOP) -> list[str]:
    keep = sorted(top_k_communities(p, top), key=lambda c: (-p.sizes[c], c))
    color = {c: plots.PALETTE[i % len(plots.PALETTE)] for i, c in enumerate(keep)}
    return [color.get(int(c), plots.GRAY) for c in p.community_of]


def community_scatter(e: Embedding, p: Partition, title: str) -> str:
    xs = e.coords[:, 0].tolist()
    ys = e.coords[:, 1].tolist() if e.dim > 1 else [0.0] * len(xs)
    return plots.scatter_svg(xs, ys, community_colors(p), title, "embedding coordinate 0", "embedding coordinate 1")


def cmd_analyze(cfg: RunConfig) -> int:
    g = load_graph(cfg.input)
    cfg.out.mkdir(parents=True, exist_ok=True)
    summary = degree_summary(g)
    write_degree_tables(cfg.out, g, summary)
    if "svg" in cfg.formats:
        degrees = sorted(summary.histogram)
        plots.write(cfg.out / "degree_histogram.svg", plots.histogram_svg(
            degrees, [summary.histogram[d] for d in degrees], "Degree distribution", "degree", "nodes"))
        plots.write(cfg.out / "degree_cdf.svg", plots.line_svg(
            [d for d, _ in summary.cdf], [f for _, f in summary.cdf],
            "Cumulative degree distribution", "degree", "fraction of nodes"))
        cent = degree_centrality(g) if g.node_count > 1 else np.zeros(g.node_count)
        plots.write(cfg.out / "centrality.svg", plots.scatter_svg(
            g.original_ids.astype(float).tolist(), cent.tolist(), [plots.PALETTE[0]] * g.node_count,
            "Degree centrality", "node", "degree centrality", radius=1.5))
    comps = connected_components(g)
    print(f"nodes: {g.node_count}")
    print(f"edges: {g.edge_count}")
    print(f"connected components: {comps.component_count}")
    print(f"max degree: {summary.max_degree}")
    print(f"fraction of nodes with degree <= 200: {summary.fraction_leq(200):.4f}")
    if g.node_count > 1:
        hubs = ", ".join(f"{label} ({c:.4f})" for label, c in top_hubs(g, min(10, g.node_count)))
        print(f"top hubs by degree centrality: {hubs}")
    return EXIT_OK


def cmd_detect(cfg: RunConfig) -> int:
    if len(cfg.algorithms) != 1:
        raise UsageError("detect takes exactly one algorithm")
    name = cfg.algorithms[0]
    g = load_graph(cfg.input)
    cfg.out.mkdir(parents=True, exist_ok=True)
    e = _embedding(g, cfg)
    outcome = run(name, g, _params(cfg, name), embedding=e)
    p = outcome.partition
    if "csv" in cfg.formats:
        write_membership_csv(cfg.out / f"{name}_membership.csv", g, p)
        _write_trace(cfg.out / f"{name}_trace.csv", outcome.objective_trace)
    if "json" in cfg.formats:
        doc = {
            "algorithm": name,
            "communities": p.community_count,
            "objective_trace": list(outcome.objective_trace),
            "seconds": outcome.wall_time if cfg.record_timing else None,
        }
        (cfg.out / f"{name}_outcome.json").write_text(json.dumps(doc, indent=2) + "\n")
    if "svg" in cfg.formats:
        plots.write(cfg.out / f"{name}_communities.svg",
                    community_scatter(e, p, f"Communities detected by {name} (top {PLOT_TOP} coloured)"))
    print(f"{name}: {p.community_count} communities")
    return EXIT_OK


def compare(cfg: RunConfig, g: Graph | None = None) -> tuple[ComparisonBundle, Graph, Embedding]:
    """Run every configured algorithm on one graph and score them on one shared embedding."""
    g = g if g is not None else load_graph(cfg.input)
    e = _embedding(g, cfg)
    reports, partitions, outcomes = [], {}, {}
    for name in cfg.algorithms:
        try:
            outcome = run(name, g, _params(cfg, name), embedding=e)
        except (ConvergenceError, ValueError) as exc:
            print(f"warning: {name} failed: {exc}", file=sys.stderr)
            reports.append(MetricReport(name, None, None, None, None, None, None, 0, None,
                                        cfg.algorithm_seed(name), {"error": str(exc)}))
            continue
        report = evaluate_all(g, e, outcome, seed=cfg.seed, silhouette_sample=cfg.silhouette_sample)
        if not cfg.record_timing:
            report.wall_time = None
        report.seed = cfg.algorithm_seed(name)
        reports.append(report)
        partitions[name] = outcome.partition
        outcomes[name] = outcome
    provenance = {
        "toolkit_version": __version__,
        "dataset": {
            "sha256": file_sha256(cfg.input),
            "nodes": g.node_count,
            "edges": g.edge_count,
        },
        "embedding": {"dim": e.dim, "sha256": e.checksum()},
        "config": cfg.echo(),
    }
    return ComparisonBundle(reports, partitions, provenance, outcomes), g, e


def write_bundle(cfg: RunConfig, bundle: ComparisonBundle, g: Graph, e: Embedding) -> None:
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)
    if "csv" in cfg.formats:
        write_metric_table(out / "metrics.csv", bundle.reports, include_timing=cfg.record_timing)
        for name, p in bundle.partitions.items():
            write_membership_csv(out / f"{name}_membership.csv", g, p)
    if "json" in cfg.formats:
        doc = {"reports": [r.as_dict() for r in bundle.reports], "provenance": bundle.provenance}
        (out / "metrics.json").write_text(json.dumps(doc, indent=2) + "\n")
    if "svg" in cfg.formats:
        labels = [r.algorithm_name for r in bundle.reports]
        for metric in RADAR_METRICS:
            plots.write(out / f"radar_{metric}.svg", plots.radar_svg(
                labels, [getattr(r, metric) for r in bundle.reports], metric.replace("_", " ").title()))
        plots.write(out / "silhouette_bar.svg", plots.bar_svg(
            labels, [r.silhouette for r in bundle.reports], "Silhouette score", "silhouette"))
    (out / "provenance.json").write_text(json.dumps(bundle.provenance, indent=2) + "\n")


def cmd_compare(cfg: RunConfig) -> int:
    bundle, g, e = compare(cfg)
    write_bundle(cfg, bundle, g, e)
    ok = [r for r in bundle.reports if r.community_count]
    for r in bundle.reports:
        q = "NA" if r.modularity is None else f"{r.modularity:.6f}"
        print(f"{r.algorithm_name:>20}  communities={r.community_count or 'NA'}  modularity={q}")
    if not ok:
        return EXIT_NUMERIC
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="commbench", description="Community detection benchmark on SNAP edge lists.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, algo_flag: str | None):
        p.add_argument("--input", required=True, type=Path, help="edge-list file (.txt or .txt.gz)")
        p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
        if algo_flag == "single":
            p.add_argument("--algo", required=True, choices=ALGORITHM_ORDER)
        elif algo_flag == "multi":
            p.add_argument("--algos", "--algo", dest="algos", default="all",
                           help="comma-separated algorithms or 'all'")
        p.add_argument("--seed", type=int, default=None, help=f"master seed (default $COMMBENCH_SEED or {DEFAULT_SEED})")
        p.add_argument("--k", type=int, default=None, help="cluster count for kmeans and spectral (default 15)")
        p.add_argument("--k-kmeans", type=int, default=None)
        p.add_argument("--k-spectral", type=int, default=None)
        p.add_argument("--embed-dim", type=int, default=32)
        p.add_argument("--silhouette-sample", type=int, default=None)
        p.add_argument("--formats", type=_csv_list, default=FORMATS, help="subset of csv,json,svg")
        p.add_argument("--no-timing", action="store_true",
                       help="write seconds as NA so repeated runs are byte-identical")

    common(sub.add_parser("analyze", help="degree distribution, CDF and centrality"), None)
    common(sub.add_parser("detect", help="run one algorithm"), "single")
    common(sub.add_parser("compare", help="run several algorithms and compare metrics"), "multi")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("COMMBENCH_SEED")
        try:
            seed = int(env) if env else DEFAULT_SEED
        except ValueError:
            raise UsageError(f"COMMBENCH_SEED is not an integer: {env!r}") from None
    if args.command == "detect":
        algos = (args.algo,)
    elif args.command == "compare":
        algos = ALGORITHM_ORDER if args.algos == "all" else _csv_list(args.algos)
    else:
        algos = ALGORITHM_ORDER
    k_kmeans = args.k_kmeans or args.k or 15
    k_spectral = args.k_spectral or args.k or 15
    try:
        return RunConfig(
            input=args.input,
            out=args.out,
            algorithms=tuple(algos),
            seed=seed,
            k_kmeans=k_kmeans,
            k_spectral=k_spectral,
            embed_dim=args.embed_dim,
            silhouette_sample=args.silhouette_sample,
            formats=tuple(args.formats),
            record_timing=not args.no_timing,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


COMMANDS = {"analyze": cmd_analyze, "detect": cmd_detect, "compare": cmd_compare}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"commbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"commbench: parse error in {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConvergenceError as exc:
        print(f"commbench: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"commbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
