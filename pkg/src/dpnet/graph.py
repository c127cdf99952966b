"""In-memory network model: node records, weighted edges, ego subgraphs."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DataError, UnknownNodeError

# 7-character ATC code; the leading letter is one of the 14 anatomical groups.
ATC_PATTERN = re.compile(r"^[ABCDGHJLMNPRSV][0-9]{2}[A-Z]{2}[0-9]{2}$")

ATC_LEVEL_ATTRIBUTES = ("anatomical", "therapeutic", "pharmacological")


def is_atc(code: str) -> bool:
    return bool(ATC_PATTERN.match(code))


def atc_attributes(node_id: str) -> dict[str, str]:
    """Classification-level attributes derived from an ATC id.

    Empty for free-form labels: only ids matching the ATC pattern carry the
    anatomical (1 char), therapeutic (3 chars) and pharmacological (4 chars)
    levels.
    """
    if not is_atc(node_id):
        return {}
    return {
        "anatomical": node_id[:1],
        "therapeutic": node_id[:3],
        "pharmacological": node_id[:4],
    }


@dataclass(frozen=True)
class NodeRecord:
    """A network node: stable id, display label, string attributes."""

    id: str
    label: str
    attributes: Mapping[str, str] = field(default_factory=dict)


class Network:
    """A graph of drug nodes with non-negative edge weights.

    Undirected edges are stored once, oriented from lower to higher node
    index; ``weighted=False`` forces every weight to 1. Node order is the
    construction order and is stable, so every export is deterministic.
    Instances are immutable once built and safe to share across threads.
    """

    def __init__(
        self,
        nodes: Sequence[NodeRecord],
        edges: Iterable[tuple[str, str, float]],
        *,
        directed: bool = False,
        weighted: bool = True,
    ):
        self.directed = directed
        self.weighted = weighted
        self._nodes = tuple(nodes)
        index: dict[str, int] = {}
        for i, rec in enumerate(self._nodes):
            if rec.id in index:
                raise DataError(f"duplicate node id: {rec.id!r}")
            index[rec.id] = i
        self._index = index

        eu: list[int] = []
        ev: list[int] = []
        ew: list[float] = []
        pos: dict[tuple[int, int], int] = {}
        for a, b, w in edges:
            try:
                ia, ib = index[a], index[b]
            except KeyError as exc:
                raise UnknownNodeError(exc.args[0]) from None
            if ia == ib:
                raise DataError(f"self-loop edge rejected: ({a!r}, {b!r})")
            if not directed and ia > ib:
                ia, ib = ib, ia
            key = (ia, ib)
            if key in pos:
                raise DataError(f"duplicate edge: ({a!r}, {b!r})")
            w = 1.0 if not weighted else float(w)
            if not np.isfinite(w) or w < 0:
                raise DataError(f"edge ({a!r}, {b!r}) has invalid weight {w!r}")
            pos[key] = len(eu)
            eu.append(ia)
            ev.append(ib)
            ew.append(w)
        self._eu = np.asarray(eu, dtype=np.int64)
        self._ev = np.asarray(ev, dtype=np.int64)
        self._ew = np.asarray(ew, dtype=np.float64)
        for arr in (self._eu, self._ev, self._ew):
            arr.setflags(write=False)
        self._edge_pos = pos
        self._csr: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None
        self._csr_in: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return int(self._eu.shape[0])

    @property
    def nodes(self) -> tuple[NodeRecord, ...]:
        return self._nodes

    def node_ids(self) -> list[str]:
        return [rec.id for rec in self._nodes]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._index

    def index_of(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise UnknownNodeError(node_id) from None

    def node(self, node_id: str) -> NodeRecord:
        return self._nodes[self.index_of(node_id)]

    def edges(self) -> Iterator[tuple[str, str, float]]:
        """Edges in storage order as (id_a, id_b, weight)."""
        for ia, ib, w in zip(self._eu, self._ev, self._ew):
            yield self._nodes[ia].id, self._nodes[ib].id, float(w)

    def has_edge(self, a: str, b: str) -> bool:
        ia = self._index.get(a)
        ib = self._index.get(b)
        if ia is None or ib is None:
            return False
        if not self.directed and ia > ib:
            ia, ib = ib, ia
        return (ia, ib) in self._edge_pos

    def edge_weight(self, a: str, b: str) -> float:
        ia, ib = self.index_of(a), self.index_of(b)
        if not self.directed and ia > ib:
            ia, ib = ib, ia
        try:
            return float(self._ew[self._edge_pos[(ia, ib)]])
        except KeyError:
            raise DataError(f"no edge between {a!r} and {b!r}") from None

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Raw (source index, target index, weight) arrays; treat as read-only."""
        return self._eu, self._ev, self._ew

    # -- adjacency ---------------------------------------------------------

    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR neighbor structure (indptr, indices, weights).

        Undirected networks list every edge in both directions; directed
        networks list out-arcs. Rows are sorted by neighbor index.
        """
        if self._csr is None:
            if self.directed:
                self._csr = self._build_csr(self._eu, self._ev, self._ew)
            else:
                src = np.concatenate([self._eu, self._ev])
                dst = np.concatenate([self._ev, self._eu])
                w = np.concatenate([self._ew, self._ew])
                self._csr = self._build_csr(src, dst, w)
        return self._csr

    def in_adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR over in-arcs (directed); alias of adjacency() when undirected."""
        if not self.directed:
            return self.adjacency()
        if self._csr_in is None:
            self._csr_in = self._build_csr(self._ev, self._eu, self._ew)
        return self._csr_in

    def _build_csr(self, src, dst, w):
        n = self.node_count
        order = np.lexsort((dst, src))
        src, dst, w = src[order], dst[order], w[order]
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = dst.astype(np.int64)
        weights = w.astype(np.float64)
        for arr in (indptr, indices, weights):
            arr.setflags(write=False)
        return indptr, indices, weights

    def neighbors(self, node_id: str) -> tuple[str, ...]:
        """Adjacent node ids (out-neighbors for directed networks)."""
        i = self.index_of(node_id)
        indptr, indices, _ = self.adjacency()
        return tuple(self._nodes[j].id for j in indices[indptr[i]:indptr[i + 1]])

    # -- degree vectors ------------------------------------------------------

    def degrees(self) -> np.ndarray:
        """Edge-count degree per node index (in+out for directed networks)."""
        n = self.node_count
        deg = np.bincount(self._eu, minlength=n) + np.bincount(self._ev, minlength=n)
        return deg.astype(np.int64)

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self._eu, minlength=self.node_count).astype(np.int64)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self._ev, minlength=self.node_count).astype(np.int64)

    def weighted_degrees(self) -> np.ndarray:
        n = self.node_count
        out = np.zeros(n, dtype=np.float64)
        np.add.at(out, self._eu, self._ew)
        np.add.at(out, self._ev, self._ew)
        return out

    # -- derived networks ----------------------------------------------------

    def subgraph(self, ids: Iterable[str]) -> "Network":
        """Induced subgraph on ``ids``; node order follows the parent."""
        keep = {self.node(i).id for i in ids}
        nodes = [rec for rec in self._nodes if rec.id in keep]
        edges = [(a, b, w) for a, b, w in self.edges() if a in keep and b in keep]
        return Network(nodes, edges, directed=self.directed, weighted=self.weighted)

    def to_edge_list(self) -> list[tuple[str, str, float]]:
        """Canonical edge list: id-lexicographic pairs, sorted."""
        out = []
        for a, b, w in self.edges():
            if not self.directed and a > b:
                a, b = b, a
            out.append((a, b, float(w)))
        out.sort()
        return out

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        w = "weighted" if self.weighted else "unweighted"
        return f"<Network {kind} {w} nodes={self.node_count} edges={self.edge_count}>"


@dataclass(frozen=True)
class EgoNetwork:
    """A focus node with the subgraph induced on it and its direct neighbors."""

    focus: str
    subgraph: Network


def from_edge_list(
    entries: Iterable,
    *,
    directed: bool = False,
    weighted: bool = True,
    labels: Mapping[str, str] | None = None,
) -> Network:
    """Build a network from aggregated edge-list entries.

    Entries are (drug_a, drug_b, weight) triples or objects with those
    fields. Undirected input must be canonical: ``drug_a < drug_b`` and one
    row per pair (weights pre-aggregated). Directed input may use any order
    but still one row per ordered pair. Self-loops and duplicates are
    rejected. With ``weighted=False`` every weight is coerced to 1.
    """
    labels = dict(labels) if labels else {}
    order: dict[str, None] = {}
    rows: list[tuple[str, str, float]] = []
    for entry in entries:
        if hasattr(entry, "drug_a"):
            a, b, w = entry.drug_a, entry.drug_b, entry.weight
        else:
            a, b, w = entry
        if a == b:
            raise DataError(f"self-loop entry rejected: ({a!r}, {b!r})")
        if not directed and not a < b:
            raise DataError(f"entry not in canonical order: ({a!r}, {b!r})")
        rows.append((a, b, float(w)))
        order.setdefault(a)
        order.setdefault(b)
    nodes = [NodeRecord(i, labels.get(i, i), atc_attributes(i)) for i in order]
    return Network(nodes, rows, directed=directed, weighted=weighted)


def ego(net: Network, node_id: str) -> EgoNetwork:
    """Depth-1 ego network: the focus, its neighbors, and all edges among them.

    Alter-alter edges present in the parent are included. For directed
    networks, neighbors in either direction count.
    """
    i = net.index_of(node_id)
    keep = {node_id}
    indptr, indices, _ = net.adjacency()
    keep.update(net.nodes[j].id for j in indices[indptr[i]:indptr[i + 1]])
    if net.directed:
        rptr, rind, _ = net.in_adjacency()
        keep.update(net.nodes[j].id for j in rind[rptr[i]:rptr[i + 1]])
    return EgoNetwork(focus=node_id, subgraph=net.subgraph(keep))


def weak_component_labels(net: Network) -> np.ndarray:
    """Connected-component label per node index (arc direction ignored)."""
    n = net.node_count
    labels = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return labels
    indptr, indices, _ = net.adjacency()
    if net.directed:
        rptr, rind, _ = net.in_adjacency()
    label = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        stack = [start]
        labels[start] = label
        while stack:
            x = stack.pop()
            nbrs = indices[indptr[x]:indptr[x + 1]]
            if net.directed:
                nbrs = np.concatenate([nbrs, rind[rptr[x]:rptr[x + 1]]])
            for y in nbrs:
                if labels[y] < 0:
                    labels[y] = label
                    stack.append(int(y))
        label += 1
    return labels
