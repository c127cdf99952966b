"""Command-line front door: dispensing data -> networks -> measures -> exports.

Exit codes: 0 success, 1 data errors, 2 usage errors. Every run is seeded
(default 42) and the seed is echoed in the JSON metadata, so identical
inputs and flags always produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from datetime import date

from . import __version__
from .algebra import combine_intersection, compare
from .community import louvain
from .errors import DpnetError
from .formats import (
    ddi_mask,
    load_network,
    read_names,
    write_atomic,
    write_edge_list,
    write_explorer_json,
    write_gexf,
    write_names,
    write_pajek,
    write_partition_csv,
)
from .graph import ego
from .ingest import (
    ExclusionList,
    active_at,
    build_edge_list,
    build_episodes,
    parse_dispensing,
)
from .metrics import (
    CENTRALITY_MEASURES,
    attribute_assortativity,
    compute_centralities,
    density,
    summarize,
)
from .report import (
    assortativity_table,
    assortativity_to_dicts,
    centrality_tables,
    centrality_to_dict,
    comparison_table,
    comparison_to_dict,
    partition_to_dict,
    summary_table,
    summary_to_dict,
)

log = logging.getLogger("dpnet")

ATTRIBUTE_LEVELS = ("anatomical", "therapeutic", "pharmacological")


def _emit_output(text: str, out: str | None):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, args):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    _emit_output(text, args.out)


def _meta(args) -> dict:
    return {"seed": args.seed}


def _filter_spec(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected column=value, got {text!r}")
    return key, value


# -- commands -----------------------------------------------------------------

def cmd_build(args) -> int:
    result = parse_dispensing(
        args.input, delimiter=args.delimiter, strict=not args.lenient
    )
    if result.skipped:
        for issue in result.skipped:
            log.warning("skipped line %d: %s", issue.line, issue.message)
    records = result.records
    if args.filter:
        records = [
            r for r in records
            if all(r.attributes.get(k) == v for k, v in args.filter)
        ]
    exclusions = (
        ExclusionList.from_file(args.exclusions) if args.exclusions
        else ExclusionList.empty()
    )
    episodes = build_episodes(records, args.adherence_factor, args.gap_days)
    active = active_at(episodes, args.index_date)
    entries = build_edge_list(active, exclusions)
    write_edge_list(entries, args.out)
    if args.names_out:
        names = {
            r.atc_code: r.drug_name for r in records if r.drug_name is not None
        }
        write_names(names, args.names_out)
    meta = {
        "command": "build",
        "records": len(records),
        "skipped": result.skip_count,
        "episodes": len(episodes),
        "patients_active": len(active),
        "edges": len(entries),
        "index_date": args.index_date.isoformat(),
        "seed": args.seed,
    }
    sys.stdout.write(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_stats(args) -> int:
    net = load_network(args.edges)
    summary = summarize(net, workers=args.workers)
    if args.format == "table":
        _emit_output(summary_table(summary), args.out)
    else:
        _emit_json({"meta": _meta(args), "summary": summary_to_dict(summary)}, args)
    return 0


def cmd_centrality(args) -> int:
    net = load_network(args.edges)
    measures = [m.strip() for m in args.measures.split(",") if m.strip()]
    report = compute_centralities(
        net,
        measures,
        weighted=args.weighted,
        workers=args.workers,
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
    )
    if args.format == "table":
        _emit_output(centrality_tables(report, args.top_k), args.out)
    else:
        _emit_json(
            {"meta": _meta(args), "centrality": centrality_to_dict(report, args.top_k)},
            args,
        )
    return 0


def cmd_assortativity(args) -> int:
    net = load_network(args.edges)
    reference = args.reference_density
    if reference is None:
        reference = density(net)
    rows = attribute_assortativity(net, args.level, reference)
    if args.format == "table":
        _emit_output(assortativity_table(rows), args.out)
    else:
        _emit_json(
            {
                "meta": _meta(args),
                "attribute": args.level,
                "reference_density": reference,
                "groups": assortativity_to_dicts(rows),
            },
            args,
        )
    return 0


def cmd_communities(args) -> int:
    net = load_network(args.edges)
    partition = louvain(net, resolution=args.resolution, seed=args.seed)
    if args.out:
        write_partition_csv(partition, args.out)
    payload = {"meta": _meta(args), "partition": partition_to_dict(partition)}
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_compare(args) -> int:
    net_a = load_network(args.edges_a)
    net_b = load_network(args.edges_b)
    result = compare(net_a, net_b, mode=args.mode)
    if args.format == "table":
        _emit_output(comparison_table(result), args.out)
    else:
        _emit_json(
            {"meta": _meta(args), "comparison": comparison_to_dict(result, args.top_k)},
            args,
        )
    return 0


def cmd_combine(args) -> int:
    net = load_network(args.edges)
    mask = ddi_mask(args.ddi)
    combined = combine_intersection(net, mask)
    write_edge_list(combined.to_edge_list(), args.out)
    meta = {
        "command": "combine",
        "nodes": combined.node_count,
        "edges": combined.edge_count,
        "seed": args.seed,
    }
    sys.stdout.write(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_ego(args) -> int:
    labels = read_names(args.names) if args.names else None
    net = load_network(args.edges, labels=labels)
    result = ego(net, args.node)
    if args.format == "json":
        write_explorer_json(result.subgraph, args.out or sys.stdout)
    else:
        write_edge_list(result.subgraph.to_edge_list(), args.out or sys.stdout)
    return 0


def cmd_export(args) -> int:
    labels = read_names(args.names) if args.names else None
    net = load_network(args.edges, labels=labels)
    if args.format == "pajek":
        write_pajek(net, args.out)
    elif args.format == "gexf":
        write_gexf(net, args.out)
    else:
        measures = None
        if args.with_measures:
            names = [m.strip() for m in args.with_measures.split(",") if m.strip()]
            measures = compute_centralities(net, names, workers=args.workers)
        partition = None
        if args.with_communities:
            partition = louvain(net, resolution=args.resolution, seed=args.seed)
        write_explorer_json(net, args.out, measures=measures, partition=partition)
    return 0


# -- parser ----------------------------------------------------------------------

def _iso_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {text!r}") from None


def _add_common(p: argparse.ArgumentParser, *, out_required: bool = False):
    p.add_argument("--seed", type=int, default=42, help="run seed (default 42)")
    p.add_argument(
        "--out",
        required=out_required,
        default=None,
        help="output path" + ("" if out_required else " (default stdout)"),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpnet",
        description="Build and analyze drug co-medication networks.",
    )
    parser.add_argument("--version", action="version", version=f"dpnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="dispensing file -> co-medication edge list")
    p.add_argument("--input", required=True, help="dispensing CSV (patient_id,atc,name,date,ddd)")
    p.add_argument("--index-date", required=True, type=_iso_date, dest="index_date")
    p.add_argument("--exclusions", default=None, help="file of ATC codes to drop")
    p.add_argument("--adherence-factor", type=float, default=1.2)
    p.add_argument("--gap-days", type=int, default=14)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--lenient", action="store_true", help="skip bad rows instead of aborting")
    p.add_argument("--filter", action="append", default=[], type=_filter_spec,
                   metavar="COLUMN=VALUE",
                   help="keep only records whose extra column equals the value")
    p.add_argument("--names-out", default=None, help="also write an atc,name CSV")
    _add_common(p, out_required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stats", help="network-level topology summary")
    p.add_argument("--edges", required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("centrality", help="per-node centrality scores")
    p.add_argument("--edges", required=True)
    p.add_argument("--measures", default=",".join(CENTRALITY_MEASURES))
    p.add_argument("--weighted", action="store_true",
                   help="use weighted paths (distance = 1/weight) and weighted adjacency")
    p.add_argument("--top-k", type=int, default=0, help="limit listings (0 = all)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--max-iterations", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("assortativity", help="within-group density ratios")
    p.add_argument("--edges", required=True)
    p.add_argument("--level", choices=ATTRIBUTE_LEVELS, default="anatomical")
    p.add_argument("--reference-density", type=float, default=None,
                   help="default: the network's own density")
    p.add_argument("--format", choices=("json", "table"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_assortativity)

    p = sub.add_parser("communities", help="Louvain modules")
    p.add_argument("--edges", required=True)
    p.add_argument("--resolution", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("compare", help="edge-by-edge comparison of two networks")
    p.add_argument("--edges-a", required=True)
    p.add_argument("--edges-b", required=True)
    p.add_argument("--mode", choices=("ratio", "difference"), default="ratio")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--format", choices=("json", "table"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("combine", help="keep co-medication edges that are DDIs")
    p.add_argument("--edges", required=True, help="weighted co-medication edge list")
    p.add_argument("--ddi", required=True, help="DDI catalog CSV (atc_a,atc_b[,severity])")
    _add_common(p, out_required=True)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("ego", help="depth-1 ego network of one node")
    p.add_argument("--edges", required=True)
    p.add_argument("--node", required=True)
    p.add_argument("--names", default=None, help="atc,name CSV for labels")
    p.add_argument("--format", choices=("edgelist", "json"), default="edgelist")
    _add_common(p)
    p.set_defaults(func=cmd_ego)

    p = sub.add_parser("export", help="write the network in an interchange format")
    p.add_argument("--edges", required=True)
    p.add_argument("--format", choices=("pajek", "gexf", "json"), required=True)
    p.add_argument("--names", default=None, help="atc,name CSV for labels")
    p.add_argument("--with-measures", default=None, metavar="LIST",
                   help="centrality measures to embed (json format only)")
    p.add_argument("--with-communities", action="store_true",
                   help="embed Louvain module ids (json format only)")
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p, out_required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("DPNET_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DpnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
