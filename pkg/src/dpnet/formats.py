"""File interchange: edge-list CSV, Pajek, GEXF, explorer JSON, DDI catalogs.

All writers are deterministic for a fixed input and, when given a path,
write atomically (temp file + rename).
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Mapping

from .community import CommunityPartition
from .errors import DataError, UnknownNodeError
from .graph import Network, from_edge_list
from .metrics import CentralityReport

EDGE_LIST_HEADER = ("drug_a", "drug_b", "weight")
GEXF_NAMESPACE = "http://www.gexf.net/1.2draft"


def fmt_weight(w: float) -> str:
    """Integral weights print as integers (patient counts); others exactly."""
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def write_atomic(path, text: str):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, dest):
    """Write text to a path (atomically) or to a text/byte sink."""
    if hasattr(dest, "write"):
        try:
            dest.write(text)
        except TypeError:
            dest.write(text.encode("utf-8"))
    else:
        write_atomic(dest, text)


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        return Path(source).read_text(encoding="utf-8")
    if isinstance(source, (bytes, bytearray)):
        return source.decode("utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


# -- edge-list CSV ----------------------------------------------------------

def write_edge_list(entries: Iterable, dest):
    """Write (drug_a, drug_b, weight) rows under the standard header."""
    lines = [",".join(EDGE_LIST_HEADER)]
    for entry in entries:
        if hasattr(entry, "drug_a"):
            a, b, w = entry.drug_a, entry.drug_b, entry.weight
        else:
            a, b, w = entry
        lines.append(f"{a},{b},{fmt_weight(w)}")
    _emit("\n".join(lines) + "\n", dest)


def read_edge_list(source) -> list[tuple[str, str, float]]:
    """Read an edge-list CSV (header drug_a,drug_b,weight) into triples."""
    reader = csv.reader(io.StringIO(_read_text(source)))
    try:
        header = tuple(h.strip() for h in next(reader))
    except StopIteration:
        raise DataError("edge list is empty: missing header row") from None
    if header != EDGE_LIST_HEADER:
        raise DataError(
            f"edge list header must be {','.join(EDGE_LIST_HEADER)}, "
            f"got {','.join(header)}"
        )
    out = []
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise DataError(f"line {reader.line_num}: expected 3 fields, got {len(row)}")
        a, b, raw = (c.strip() for c in row)
        try:
            w = float(raw)
        except ValueError:
            raise DataError(f"line {reader.line_num}: malformed weight {raw!r}") from None
        out.append((a, b, w))
    return out


def load_network(source, *, directed: bool = False, weighted: bool = True,
                 labels: Mapping[str, str] | None = None) -> Network:
    """Read an edge-list CSV straight into a Network."""
    return from_edge_list(
        read_edge_list(source), directed=directed, weighted=weighted, labels=labels
    )


# -- Pajek -------------------------------------------------------------------

def write_pajek(net: Network, dest):
    """Pajek .net: *Vertices with 1-based ids, then *Edges or *Arcs triples."""
    lines = [f"*Vertices {net.node_count}"]
    for i, rec in enumerate(net.nodes, start=1):
        if '"' in rec.id:
            raise DataError(f"Pajek labels cannot contain double quotes: {rec.id!r}")
        lines.append(f'{i} "{rec.id}"')
    lines.append("*Arcs" if net.directed else "*Edges")
    eu, ev, ew = net.edge_arrays()
    for k in range(len(eu)):
        lines.append(f"{eu[k] + 1} {ev[k] + 1} {fmt_weight(float(ew[k]))}")
    _emit("\n".join(lines) + "\n", dest)


def read_pajek(source) -> Network:
    """Parse the Pajek subset written by write_pajek (plus bare vertex lines)."""
    from .graph import NodeRecord, atc_attributes

    lines = [ln.strip() for ln in _read_text(source).splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].lower().startswith("*vertices"):
        raise DataError("Pajek input must start with *Vertices")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise DataError(f"malformed Pajek vertices line: {lines[0]!r}") from None
    ids: list[str] = []
    pos = 1
    while pos < len(lines) and not lines[pos].startswith("*"):
        parts = lines[pos].split(None, 1)
        if len(parts) < 2:
            raise DataError(f"malformed Pajek vertex line: {lines[pos]!r}")
        label = parts[1].strip()
        if label.startswith('"'):
            end = label.find('"', 1)
            if end < 0:
                raise DataError(f"unterminated label in Pajek vertex line: {lines[pos]!r}")
            label = label[1:end]
        else:
            label = label.split()[0]
        ids.append(label)
        pos += 1
    if len(ids) != n:
        raise DataError(f"Pajek vertex count mismatch: declared {n}, found {len(ids)}")
    if pos >= len(lines):
        raise DataError("Pajek input has no *Edges or *Arcs section")
    section = lines[pos].lower()
    if section.startswith("*arcs"):
        directed = True
    elif section.startswith("*edges"):
        directed = False
    else:
        raise DataError(f"unexpected Pajek section: {lines[pos]!r}")
    edges = []
    for ln in lines[pos + 1:]:
        if ln.startswith("*"):
            raise DataError(f"unexpected extra Pajek section: {ln!r}")
        parts = ln.split()
        if len(parts) not in (2, 3):
            raise DataError(f"malformed Pajek edge line: {ln!r}")
        try:
            a, b = int(parts[0]) - 1, int(parts[1]) - 1
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise DataError(f"malformed Pajek edge line: {ln!r}") from None
        if not (0 <= a < n and 0 <= b < n):
            raise DataError(f"Pajek edge references unknown vertex: {ln!r}")
        edges.append((ids[a], ids[b], w))
    nodes = [NodeRecord(i, i, atc_attributes(i)) for i in ids]
    return Network(nodes, edges, directed=directed, weighted=True)


# -- GEXF ----------------------------------------------------------------------

def write_gexf(net: Network, dest):
    """GEXF 1.2 document with node attvalues and numeric edge weights."""
    root = ET.Element("gexf", {"xmlns": GEXF_NAMESPACE, "version": "1.2"})
    graph = ET.SubElement(
        root,
        "graph",
        {
            "mode": "static",
            "defaultedgetype": "directed" if net.directed else "undirected",
        },
    )
    attr_keys = sorted({k for rec in net.nodes for k in rec.attributes})
    attr_id = {k: str(i) for i, k in enumerate(attr_keys)}
    if attr_keys:
        attrs = ET.SubElement(graph, "attributes", {"class": "node"})
        for k in attr_keys:
            ET.SubElement(
                attrs, "attribute", {"id": attr_id[k], "title": k, "type": "string"}
            )
    nodes_el = ET.SubElement(graph, "nodes")
    for rec in net.nodes:
        node_el = ET.SubElement(nodes_el, "node", {"id": rec.id, "label": rec.label})
        if rec.attributes:
            values = ET.SubElement(node_el, "attvalues")
            for k in attr_keys:
                if k in rec.attributes:
                    ET.SubElement(
                        values,
                        "attvalue",
                        {"for": attr_id[k], "value": rec.attributes[k]},
                    )
    edges_el = ET.SubElement(graph, "edges")
    for i, (a, b, w) in enumerate(net.edges()):
        ET.SubElement(
            edges_el,
            "edge",
            {"id": str(i), "source": a, "target": b, "weight": fmt_weight(w)},
        )
    ET.indent(root)
    text = ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"
    _emit(text, dest)


# -- explorer JSON ---------------------------------------------------------------

def explorer_document(
    net: Network,
    measures: CentralityReport | None = None,
    partition: CommunityPartition | None = None,
) -> dict:
    """The JSON document consumed by the interactive explorer.

    Schema: {meta: {directed, weighted, counts}, nodes: [...], edges: [...]};
    see schemas/explorer.schema.json. Measures and module ids are optional
    per-node extras and must reference existing nodes only.
    """
    known = {rec.id for rec in net.nodes}
    if measures is not None:
        for name in ("degree", "in_degree", "out_degree", "betweenness",
                     "closeness", "eigenvector"):
            scores = getattr(measures, name)
            if scores is None:
                continue
            for node_id in scores:
                if node_id not in known:
                    raise UnknownNodeError(node_id)
    if partition is not None:
        for node_id in partition.assignment:
            if node_id not in known:
                raise UnknownNodeError(node_id)

    def as_number(x: float):
        return int(x) if float(x).is_integer() else float(x)

    nodes = []
    for rec in net.nodes:
        node: dict = {
            "id": rec.id,
            "label": rec.label,
            "attrs": dict(rec.attributes),
        }
        if measures is not None:
            node["measures"] = {
                k: as_number(v) for k, v in measures.measures_for(rec.id).items()
            }
        if partition is not None and rec.id in partition.assignment:
            node["module"] = partition.assignment[rec.id]
        nodes.append(node)
    edges = [
        {"source": a, "target": b, "weight": as_number(w)}
        for a, b, w in net.to_edge_list()
    ]
    return {
        "meta": {
            "directed": net.directed,
            "weighted": net.weighted,
            "counts": {"nodes": net.node_count, "edges": net.edge_count},
        },
        "nodes": nodes,
        "edges": edges,
    }


def write_explorer_json(
    net: Network,
    dest,
    measures: CentralityReport | None = None,
    partition: CommunityPartition | None = None,
):
    doc = explorer_document(net, measures, partition)
    _emit(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", dest)


# -- DDI catalog -------------------------------------------------------------------

def read_ddi_catalog(source) -> list[tuple[str, str]]:
    """Read interaction pairs from a CSV with header atc_a,atc_b[,severity].

    When a severity column is present only rows labeled "severe" are kept.
    Pairs are canonicalized and de-duplicated.
    """
    reader = csv.reader(io.StringIO(_read_text(source)))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataError("DDI catalog is empty: missing header row") from None
    if header[:2] != ["atc_a", "atc_b"]:
        raise DataError(
            f"DDI catalog header must start with atc_a,atc_b, got {','.join(header)}"
        )
    has_severity = "severity" in header
    sev_idx = header.index("severity") if has_severity else -1
    pairs: set[tuple[str, str]] = set()
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(
                f"line {reader.line_num}: expected {len(header)} fields, got {len(row)}"
            )
        a, b = row[0].strip(), row[1].strip()
        if a == b:
            raise DataError(f"line {reader.line_num}: self-interaction {a!r}")
        if has_severity and row[sev_idx].strip().lower() != "severe":
            continue
        pairs.add((a, b) if a < b else (b, a))
    return sorted(pairs)


def ddi_mask(source) -> Network:
    """The unweighted interaction network of a DDI catalog."""
    return from_edge_list(
        [(a, b, 1.0) for a, b in read_ddi_catalog(source)], weighted=False
    )


# -- small CSV helpers ------------------------------------------------------------

def write_names(names: Mapping[str, str], dest):
    """id -> display-name map as CSV (header atc,name), sorted by id."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["atc", "name"])
    for code in sorted(names):
        writer.writerow([code, names[code]])
    _emit(buf.getvalue(), dest)


def read_names(source) -> dict[str, str]:
    reader = csv.reader(io.StringIO(_read_text(source)))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataError("names file is empty: missing header row") from None
    if header != ["atc", "name"]:
        raise DataError(f"names header must be atc,name, got {','.join(header)}")
    out: dict[str, str] = {}
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise DataError(f"line {reader.line_num}: expected 2 fields, got {len(row)}")
        out[row[0].strip()] = row[1].strip()
    return out


def write_partition_csv(partition: CommunityPartition, dest):
    """node,module rows sorted by node id."""
    lines = ["node,module"]
    for node_id in sorted(partition.assignment):
        lines.append(f"{node_id},{partition.assignment[node_id]}")
    _emit("\n".join(lines) + "\n", dest)
