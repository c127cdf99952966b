"""Aligned text tables and JSON-ready dictionaries for reports."""

from __future__ import annotations

from typing import Mapping, Sequence

from .algebra import ComparisonResult
from .community import CommunityPartition
from .metrics import CentralityReport, GroupAssortativityRow, TopologySummary


def fmt_cell(value) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def render_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Fixed-width table: floats at 6 decimals, numeric columns right-aligned."""
    cells = [[fmt_cell(c) for c in row] for row in rows]
    ncols = len(headers)
    numeric = [
        all(isinstance(row[i], (int, float)) and not isinstance(row[i], bool)
            for row in rows) and bool(rows)
        for i in range(ncols)
    ]
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in cells)) if cells else len(headers[i])
        for i in range(ncols)
    ]
    def fmt_row(row):
        parts = []
        for i, cell in enumerate(row):
            parts.append(cell.rjust(widths[i]) if numeric[i] else cell.ljust(widths[i]))
        return "  ".join(parts).rstrip()
    lines = [fmt_row(list(headers)), fmt_row(["-" * w for w in widths])]
    lines.extend(fmt_row(r) for r in cells)
    return "\n".join(lines) + "\n"


def top_nodes(scores: Mapping[str, float], k: int) -> list[tuple[str, float]]:
    """Highest-scored nodes; ties break lexicographically by id."""
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return ranked if k <= 0 else ranked[:k]


# -- topology -----------------------------------------------------------------

def summary_to_dict(s: TopologySummary) -> dict:
    return {
        "node_count": s.node_count,
        "edge_count": s.edge_count,
        "density": s.density,
        "avg_degree": s.avg_degree,
        "edges_per_node": s.edges_per_node,
        "degree_assortativity": s.degree_assortativity,
        "avg_path_length": s.avg_path_length,
        "thickest_edge": {
            "drug_a": s.thickest_edge[0],
            "drug_b": s.thickest_edge[1],
            "weight": s.thickest_edge[2],
        },
        "weight_range": {"min": s.weight_range[0], "max": s.weight_range[1]},
    }


def summary_table(s: TopologySummary) -> str:
    rows = [
        ("Number of nodes", s.node_count),
        ("Number of edges", s.edge_count),
        ("Density", s.density),
        ("Average degree (2E/N)", s.avg_degree),
        ("Edges per node (E/N)", s.edges_per_node),
        ("Degree assortativity", s.degree_assortativity),
        ("Average path length", s.avg_path_length),
        ("Thickest edge", f"{s.thickest_edge[0]} -- {s.thickest_edge[1]}"),
        ("Thickest edge weight", s.thickest_edge[2]),
        ("Edge weight range", f"{fmt_cell(s.weight_range[0])} - {fmt_cell(s.weight_range[1])}"),
    ]
    return render_table(("Measure", "Value"), rows)


# -- assortativity ---------------------------------------------------------------

def assortativity_to_dicts(rows: Sequence[GroupAssortativityRow]) -> list[dict]:
    return [
        {
            "group": r.group,
            "member_count": r.member_count,
            "potential_edges": r.potential_edges,
            "actual_edges": r.actual_edges,
            "group_density": r.group_density,
            "ratio": r.ratio,
        }
        for r in rows
    ]


def assortativity_table(rows: Sequence[GroupAssortativityRow]) -> str:
    headers = (
        "Group",
        "Members",
        "Potential edges",
        "Actual edges",
        "Group density",
        "Density ratio",
    )
    body = [
        (r.group, r.member_count, r.potential_edges, r.actual_edges,
         r.group_density, r.ratio)
        for r in rows
    ]
    return render_table(headers, body)


# -- centrality -------------------------------------------------------------------

def centrality_to_dict(report: CentralityReport, k: int = 0) -> dict:
    out: dict = {}
    for name in ("degree", "in_degree", "out_degree", "betweenness",
                 "closeness", "eigenvector"):
        scores = getattr(report, name)
        if scores is None:
            continue
        out[name] = [
            {"node": node, "score": score} for node, score in top_nodes(scores, k)
        ]
    return out


def centrality_tables(report: CentralityReport, k: int = 0) -> str:
    blocks = []
    for name in ("degree", "in_degree", "out_degree", "betweenness",
                 "closeness", "eigenvector"):
        scores = getattr(report, name)
        if scores is None:
            continue
        blocks.append(name)
        blocks.append(render_table(("Node", "Score"), top_nodes(scores, k)))
    return "\n".join(blocks)


# -- communities --------------------------------------------------------------------

def partition_to_dict(p: CommunityPartition) -> dict:
    return {
        "modularity_q": p.modularity_q,
        "module_count": p.module_count,
        "module_sizes": {str(k): v for k, v in p.module_sizes.items()},
    }


# -- comparison ---------------------------------------------------------------------

def comparison_to_dict(result: ComparisonResult, k: int = 0) -> dict:
    from .algebra import top_shifted

    out = {
        "mode": result.mode,
        "classification": dict(result.classification),
        "matched_count": len(result.matched),
        "only_in_a_count": len(result.only_in_a),
        "only_in_b_count": len(result.only_in_b),
        "matched_fraction": result.matched_fraction,
        "matched_fraction_a": result.matched_fraction_a,
        "matched_fraction_b": result.matched_fraction_b,
        "only_in_a": [list(p) for p in result.only_in_a],
        "only_in_b": [list(p) for p in result.only_in_b],
    }
    if result.mode == "ratio" and k > 0 and result.matched:
        out["top_a_over_b"] = [
            {"drug_a": p[0], "drug_b": p[1], "ratio": v}
            for p, v in top_shifted(result, "a_over_b", k)
        ]
        out["top_b_over_a"] = [
            {"drug_a": p[0], "drug_b": p[1], "ratio": v}
            for p, v in top_shifted(result, "b_over_a", k)
        ]
    return out


def comparison_table(result: ComparisonResult) -> str:
    """Matched-edge classification counts with percentages."""
    total = len(result.matched)

    def pct(x: int) -> str:
        return f"{100.0 * x / total:.0f} %" if total else "0 %"

    c = result.classification
    rows = [
        ("Lower combination frequency in A than B", c["lower_in_a"], pct(c["lower_in_a"])),
        ("No change", c["no_change"], pct(c["no_change"])),
        ("Higher combination frequency in A than B", c["higher_in_a"], pct(c["higher_in_a"])),
        ("Total", total, pct(total)),
    ]
    return render_table(("Class", "Frequency", "Percent"), rows)
