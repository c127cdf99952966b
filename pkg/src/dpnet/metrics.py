"""Topology, centrality and assortativity measures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from . import _sweeps
from .errors import ConvergenceError, DataError, UnsupportedModeError
from .graph import Network, weak_component_labels

CENTRALITY_MEASURES = ("degree", "betweenness", "closeness", "eigenvector")


@dataclass(frozen=True)
class TopologySummary:
    """Network-level description: counts, density, degrees, paths, extremes.

    Both average-degree conventions are reported: ``avg_degree`` counts edge
    endpoints per node (2E/N undirected, E/N directed) while
    ``edges_per_node`` is always E/N.
    """

    node_count: int
    edge_count: int
    density: float
    avg_degree: float
    edges_per_node: float
    degree_assortativity: float | None
    avg_path_length: float
    thickest_edge: tuple[str, str, float]
    weight_range: tuple[float, float]


@dataclass(frozen=True)
class GroupAssortativityRow:
    """Within-group edge density of one attribute group, against a reference."""

    group: str
    member_count: int
    potential_edges: int
    actual_edges: int
    group_density: float
    ratio: float


@dataclass(frozen=True)
class EdgeExtremes:
    thickest: tuple[str, str, float]
    weight_min: float
    weight_max: float


@dataclass(frozen=True)
class CentralityReport:
    """Per-node scores for whichever measures were computed."""

    degree: Mapping[str, int]
    in_degree: Mapping[str, int] | None = None
    out_degree: Mapping[str, int] | None = None
    betweenness: Mapping[str, float] | None = None
    closeness: Mapping[str, float] | None = None
    eigenvector: Mapping[str, float] | None = None

    def measures_for(self, node_id: str) -> dict[str, float]:
        out: dict[str, float] = {}
        for name in ("degree", "in_degree", "out_degree", "betweenness",
                     "closeness", "eigenvector"):
            scores = getattr(self, name)
            if scores is not None and node_id in scores:
                out[name] = scores[node_id]
        return out


def density_from_counts(node_count: int, edge_count: int, directed: bool = False) -> float:
    """Actual edges over the possible edge count n(n-1)/2 (n(n-1) directed)."""
    if node_count < 2:
        raise DataError("density undefined for networks with fewer than 2 nodes")
    possible = node_count * (node_count - 1)
    if not directed:
        possible /= 2
    return edge_count / possible


def density(net: Network) -> float:
    """Fraction of possible edges present in the network."""
    return density_from_counts(net.node_count, net.edge_count, net.directed)


def degree_centrality(net: Network) -> dict[str, int]:
    """Edge count per node, ignoring weights (in+out for directed networks)."""
    deg = net.degrees()
    return {rec.id: int(deg[i]) for i, rec in enumerate(net.nodes)}


def in_degree_centrality(net: Network) -> dict[str, int]:
    if not net.directed:
        raise UnsupportedModeError("in-degree is only defined for directed networks")
    deg = net.in_degrees()
    return {rec.id: int(deg[i]) for i, rec in enumerate(net.nodes)}


def out_degree_centrality(net: Network) -> dict[str, int]:
    if not net.directed:
        raise UnsupportedModeError("out-degree is only defined for directed networks")
    deg = net.out_degrees()
    return {rec.id: int(deg[i]) for i, rec in enumerate(net.nodes)}


def betweenness_centrality(
    net: Network,
    normalized: bool = False,
    *,
    weighted: bool = False,
    workers: int = 1,
) -> dict[str, float]:
    """Freeman betweenness with credit split equally across geodesics.

    Each unordered pair counts once in undirected networks (ordered pairs
    once when directed). Weighted mode measures path length as the sum of
    1/weight along the path. Results are independent of ``workers``.
    """
    n = net.node_count
    raw = _sweeps.betweenness_raw(net, weighted=weighted, workers=workers)
    if not net.directed:
        raw = raw / 2.0
    if normalized:
        denom = (n - 1) * (n - 2) / (1.0 if net.directed else 2.0)
        if denom > 0:
            raw = raw / denom
        else:
            raw = raw * 0.0
    return {rec.id: float(raw[i]) for i, rec in enumerate(net.nodes)}


def closeness_centrality(
    net: Network,
    *,
    weighted: bool = False,
    workers: int = 1,
) -> dict[str, float]:
    """Normalized closeness (r-1)/sum(d) within each node's component.

    r is the number of reachable nodes including the node itself, so a node
    adjacent to everything it can reach scores 1; isolated nodes score 0.
    Directed networks use outbound distances.
    """
    sums, reach = _sweeps.distance_stats(net, weighted=weighted, workers=workers)
    out: dict[str, float] = {}
    for i, rec in enumerate(net.nodes):
        r = int(reach[i])
        out[rec.id] = 0.0 if r <= 1 else (r - 1) / float(sums[i])
    return out


def _sparse_adjacency(net: Network, weighted: bool) -> sp.csr_matrix:
    eu, ev, ew = net.edge_arrays()
    w = ew if weighted else np.ones_like(ew)
    n = net.node_count
    mat = sp.coo_matrix(
        (np.concatenate([w, w]), (np.concatenate([eu, ev]), np.concatenate([ev, eu]))),
        shape=(n, n),
    )
    return mat.tocsr()


def eigenvector_centrality(
    net: Network,
    tolerance: float = 1e-9,
    max_iterations: int = 1000,
    *,
    weighted: bool = False,
    scaling: str = "max",
) -> dict[str, float]:
    """Principal-eigenvector scores by shifted power iteration.

    Runs independently on every connected component and rescales each so the
    component maximum is 1 (``scaling="unit"`` gives unit length instead).
    The shift (the component's largest weight) makes the iteration converge
    on bipartite components and keeps it invariant under uniform weight
    scaling. Isolated nodes score 0.
    """
    if net.directed:
        raise UnsupportedModeError(
            "eigenvector centrality requires an undirected network"
        )
    if scaling not in ("max", "unit"):
        raise ValueError(f"scaling must be 'max' or 'unit', got {scaling!r}")
    n = net.node_count
    scores = np.zeros(n)
    if n == 0:
        return {}
    adjacency = _sparse_adjacency(net, weighted)
    comp = weak_component_labels(net)
    for c in range(int(comp.max()) + 1):
        idx = np.flatnonzero(comp == c)
        if idx.size < 2:
            continue
        sub = adjacency[idx][:, idx]
        wmax = sub.max() if sub.nnz else 0.0
        if wmax <= 0:
            continue
        x = np.full(idx.size, 1.0)
        converged = False
        for _ in range(max_iterations):
            y = sub @ x + wmax * x
            y /= y.max()
            diff = np.abs(y - x).max()
            x = y
            if diff < tolerance:
                converged = True
                break
        if not converged:
            raise ConvergenceError(
                f"eigenvector power iteration did not converge "
                f"within {max_iterations} iterations",
                iterations=max_iterations,
            )
        scores[idx] = x / (x.max() if scaling == "max" else np.linalg.norm(x))
    return {rec.id: float(scores[i]) for i, rec in enumerate(net.nodes)}


def degree_assortativity(net: Network) -> float | None:
    """Pearson correlation of endpoint degrees over edges.

    Undirected edges contribute both orientations. Returns None when the
    endpoint degrees have zero variance (regular graphs).
    """
    if net.edge_count < 1:
        raise DataError("degree assortativity requires at least one edge")
    deg = net.degrees().astype(np.float64)
    eu, ev, _ = net.edge_arrays()
    if net.directed:
        x, y = deg[eu], deg[ev]
    else:
        x = np.concatenate([deg[eu], deg[ev]])
        y = np.concatenate([deg[ev], deg[eu]])
    sx, sy = x.std(), y.std()
    if sx == 0.0 or sy == 0.0:
        return None
    return float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))


def group_assortativity_row(
    group: str,
    member_count: int,
    actual_edges: int,
    reference_density: float,
) -> GroupAssortativityRow:
    """One assortativity row from raw counts.

    potential = m(m-1)/2; density = actual/potential (0 when m < 2);
    ratio = density / reference.
    """
    if reference_density <= 0:
        raise DataError(f"reference density must be positive, got {reference_density}")
    potential = member_count * (member_count - 1) // 2
    if actual_edges > potential:
        raise DataError(
            f"group {group!r}: actual edges {actual_edges} "
            f"exceed potential {potential}"
        )
    dens = actual_edges / potential if potential > 0 else 0.0
    return GroupAssortativityRow(
        group=group,
        member_count=member_count,
        potential_edges=potential,
        actual_edges=actual_edges,
        group_density=dens,
        ratio=dens / reference_density,
    )


def attribute_assortativity(
    net: Network,
    attribute: str,
    reference_density: float,
) -> list[GroupAssortativityRow]:
    """Within-group density per attribute value, as a ratio to a reference.

    Nodes missing the attribute fall into the "unknown" group. Groups with
    fewer than two members have density 0 by convention.
    """
    if net.directed:
        raise UnsupportedModeError(
            "attribute assortativity is defined for undirected networks"
        )
    if reference_density <= 0:
        raise DataError(f"reference density must be positive, got {reference_density}")
    group_of: dict[str, str] = {
        rec.id: rec.attributes.get(attribute, "unknown") for rec in net.nodes
    }
    members: dict[str, int] = {}
    for g in group_of.values():
        members[g] = members.get(g, 0) + 1
    actual: dict[str, int] = {g: 0 for g in members}
    for a, b, _ in net.edges():
        if group_of[a] == group_of[b]:
            actual[group_of[a]] += 1
    return [
        group_assortativity_row(g, members[g], actual[g], reference_density)
        for g in sorted(members)
    ]


def average_path_length(net: Network, *, workers: int = 1) -> float:
    """Mean geodesic distance over ordered reachable pairs (no self-pairs).

    Unreachable pairs are excluded from both numerator and denominator.
    """
    sums, reach = _sweeps.distance_stats(net, weighted=False, workers=workers)
    pairs = int((reach - 1).sum())
    if pairs <= 0:
        raise DataError("average path length undefined: no reachable pair")
    return float(sums.sum()) / pairs


def edge_extremes(net: Network) -> EdgeExtremes:
    """The heaviest edge (ties broken by canonical pair order) and weight range."""
    if net.edge_count == 0:
        raise DataError("edge extremes undefined for an empty edge set")
    best: tuple[str, str, float] | None = None
    wmin = wmax = None
    for a, b, w in net.edges():
        if not net.directed and a > b:
            a, b = b, a
        if wmin is None or w < wmin:
            wmin = w
        if wmax is None or w > wmax:
            wmax = w
            best = (a, b, w)
        elif w == wmax and (a, b) < (best[0], best[1]):
            best = (a, b, w)
    return EdgeExtremes(thickest=best, weight_min=float(wmin), weight_max=float(wmax))


def summarize(net: Network, *, workers: int = 1) -> TopologySummary:
    """Full network-level description (requires >= 2 nodes and >= 1 edge)."""
    n, e = net.node_count, net.edge_count
    dens = density(net)
    extremes = edge_extremes(net)
    return TopologySummary(
        node_count=n,
        edge_count=e,
        density=dens,
        avg_degree=(e / n) if net.directed else (2.0 * e / n),
        edges_per_node=e / n,
        degree_assortativity=degree_assortativity(net),
        avg_path_length=average_path_length(net, workers=workers),
        thickest_edge=extremes.thickest,
        weight_range=(extremes.weight_min, extremes.weight_max),
    )


def compute_centralities(
    net: Network,
    measures: Sequence[str] = CENTRALITY_MEASURES,
    *,
    weighted: bool = False,
    workers: int = 1,
    tolerance: float = 1e-9,
    max_iterations: int = 1000,
) -> CentralityReport:
    """Compute the requested centrality measures in one report."""
    unknown = [m for m in measures if m not in CENTRALITY_MEASURES]
    if unknown:
        raise DataError(f"unknown centrality measures: {', '.join(unknown)}")
    wants = set(measures)
    return CentralityReport(
        degree=degree_centrality(net),
        in_degree=in_degree_centrality(net) if net.directed else None,
        out_degree=out_degree_centrality(net) if net.directed else None,
        betweenness=(
            betweenness_centrality(net, weighted=weighted, workers=workers)
            if "betweenness" in wants else None
        ),
        closeness=(
            closeness_centrality(net, weighted=weighted, workers=workers)
            if "closeness" in wants else None
        ),
        eigenvector=(
            eigenvector_centrality(
                net, tolerance, max_iterations, weighted=weighted
            )
            if "eigenvector" in wants else None
        ),
    )
