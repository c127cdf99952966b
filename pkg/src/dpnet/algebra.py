"""Multi-network operations: intersection, comparison, bipartite projection."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DataError, UnsupportedModeError
from .graph import Network, NodeRecord, atc_attributes

Pair = tuple[str, str]


@dataclass(frozen=True)
class MatchedEdge:
    """A drug pair present in both networks, with its per-network weights."""

    pair: Pair
    weight_a: float
    weight_b: float
    value: float  # ratio (a/b) or difference (a-b), per the comparison mode


@dataclass(frozen=True)
class ComparisonResult:
    """Edge-by-edge comparison of two weighted networks.

    ``matched_fraction`` is over the union of the two edge sets; the
    per-network fractions are reported alongside since either base can be
    the one of interest.
    """

    mode: str
    matched: Sequence[MatchedEdge]
    only_in_a: Sequence[Pair]
    only_in_b: Sequence[Pair]
    classification: Mapping[str, int]
    matched_fraction: float
    matched_fraction_a: float
    matched_fraction_b: float


def _pair_weights(net: Network) -> dict[Pair, float]:
    out: dict[Pair, float] = {}
    for a, b, w in net.edges():
        if a > b:
            a, b = b, a
        out[(a, b)] = w
    return out


def _require_undirected(*nets: Network, what: str):
    for net in nets:
        if net.directed:
            raise UnsupportedModeError(f"{what} requires undirected networks")


def combine_intersection(weighted: Network, mask: Network) -> Network:
    """Keep the edges present in both networks, weighted by the first.

    The result's nodes are exactly the endpoints of surviving edges; node
    labels and attributes come from the weighted network.
    """
    _require_undirected(weighted, mask, what="combine_intersection")
    mask_pairs = set(_pair_weights(mask))
    surviving = [
        (pair[0], pair[1], w)
        for pair, w in sorted(_pair_weights(weighted).items())
        if pair in mask_pairs
    ]
    keep = {a for a, _, _ in surviving} | {b for _, b, _ in surviving}
    nodes = [rec for rec in weighted.nodes if rec.id in keep]
    return Network(nodes, surviving, directed=False, weighted=True)


def compare(a: Network, b: Network, mode: str = "ratio") -> ComparisonResult:
    """Compare shared edges of two weighted networks by ratio or difference.

    Each shared pair is classified: no_change when the weights are equal,
    higher_in_a / lower_in_a otherwise. Unmatched edges are reported, never
    dropped.
    """
    if mode not in ("ratio", "difference"):
        raise DataError(f"comparison mode must be 'ratio' or 'difference', got {mode!r}")
    _require_undirected(a, b, what="compare")
    if not (a.weighted and b.weighted):
        raise DataError("compare requires weighted networks")
    wa = _pair_weights(a)
    wb = _pair_weights(b)
    matched: list[MatchedEdge] = []
    counts = {"lower_in_a": 0, "no_change": 0, "higher_in_a": 0}
    for pair in sorted(wa.keys() & wb.keys()):
        x, y = wa[pair], wb[pair]
        if mode == "ratio":
            if y == 0:
                raise DataError(f"zero weight in divisor network for pair {pair}")
            value = x / y
        else:
            value = x - y
        if x == y:
            counts["no_change"] += 1
        elif x > y:
            counts["higher_in_a"] += 1
        else:
            counts["lower_in_a"] += 1
        matched.append(MatchedEdge(pair, x, y, value))
    union = len(wa.keys() | wb.keys())
    return ComparisonResult(
        mode=mode,
        matched=tuple(matched),
        only_in_a=tuple(sorted(wa.keys() - wb.keys())),
        only_in_b=tuple(sorted(wb.keys() - wa.keys())),
        classification=counts,
        matched_fraction=len(matched) / union if union else 0.0,
        matched_fraction_a=len(matched) / len(wa) if wa else 0.0,
        matched_fraction_b=len(matched) / len(wb) if wb else 0.0,
    )


def top_shifted(
    result: ComparisonResult,
    direction: str = "a_over_b",
    k: int = 10,
) -> list[tuple[Pair, float]]:
    """The k matched pairs with the largest ratio in the chosen direction.

    ``b_over_a`` ranks by the inverse ratio and reports it. Ties break by
    canonical pair order; fewer than k matches returns them all.
    """
    if result.mode != "ratio":
        raise DataError("top_shifted requires a ratio-mode comparison result")
    if direction not in ("a_over_b", "b_over_a"):
        raise DataError(f"direction must be 'a_over_b' or 'b_over_a', got {direction!r}")
    if k <= 0:
        raise DataError(f"k must be positive, got {k}")
    oriented = [
        (m.pair, m.value if direction == "a_over_b" else 1.0 / m.value)
        for m in result.matched
    ]
    oriented.sort(key=lambda item: (-item[1], item[0]))
    return oriented[:k]


@dataclass(frozen=True)
class BipartiteNetwork:
    """Two disjoint node sets with weighted edges only across the sets."""

    left_nodes: tuple[NodeRecord, ...]
    right_nodes: tuple[NodeRecord, ...]
    edges: tuple[tuple[str, str, float], ...]  # (left id, right id, weight)

    @property
    def left_ids(self) -> list[str]:
        return [rec.id for rec in self.left_nodes]

    @property
    def right_ids(self) -> list[str]:
        return [rec.id for rec in self.right_nodes]


def bipartite_from_edges(
    entries: Iterable[tuple[str, str, float]],
    left_ids: Iterable[str],
    right_ids: Iterable[str],
    labels: Mapping[str, str] | None = None,
) -> BipartiteNetwork:
    """Build a bipartite network from declared side memberships.

    Entries may name the pair in either orientation; an edge whose endpoints
    fall on one side is an error, as is an id declared on both sides.
    """
    labels = dict(labels) if labels else {}
    left = list(dict.fromkeys(left_ids))
    right = list(dict.fromkeys(right_ids))
    overlap = set(left) & set(right)
    if overlap:
        raise DataError(f"ids declared on both sides: {sorted(overlap)}")
    left_set, right_set = set(left), set(right)
    seen: set[tuple[str, str]] = set()
    edges: list[tuple[str, str, float]] = []
    for a, b, w in entries:
        if a in left_set and b in right_set:
            l, r = a, b
        elif a in right_set and b in left_set:
            l, r = b, a
        elif a in left_set and b in left_set or a in right_set and b in right_set:
            raise DataError(f"edge within one side rejected: ({a!r}, {b!r})")
        else:
            unknown = a if a not in left_set | right_set else b
            raise DataError(f"edge endpoint not declared on either side: {unknown!r}")
        if (l, r) in seen:
            raise DataError(f"duplicate bipartite edge: ({l!r}, {r!r})")
        seen.add((l, r))
        edges.append((l, r, float(w)))

    def record(i: str) -> NodeRecord:
        return NodeRecord(i, labels.get(i, i), atc_attributes(i))

    return BipartiteNetwork(
        left_nodes=tuple(record(i) for i in left),
        right_nodes=tuple(record(i) for i in right),
        edges=tuple(edges),
    )


def project(bnet: BipartiteNetwork, side: str = "left") -> Network:
    """One-mode projection: same-side nodes link iff they share a counterpart.

    The projected weight is the number of shared counterparts. All declared
    nodes of the side are kept, including ones left isolated.
    """
    if side not in ("left", "right"):
        raise DataError(f"side must be 'left' or 'right', got {side!r}")
    nodes = bnet.left_nodes if side == "left" else bnet.right_nodes
    counterparts: dict[str, list[str]] = {}
    for l, r, _ in bnet.edges:
        anchor, other = (r, l) if side == "left" else (l, r)
        counterparts.setdefault(anchor, []).append(other)
    counts: Counter[Pair] = Counter()
    for members in counterparts.values():
        for a, b in combinations(sorted(set(members)), 2):
            counts[(a, b)] += 1
    edges = [(a, b, float(w)) for (a, b), w in sorted(counts.items())]
    return Network(list(nodes), edges, directed=False, weighted=True)
