"""Comparing two periods, masking by interactions, projecting bipartite data.

Three multi-network operations: the edge-ratio comparison of two yearly
snapshots, the intersection of co-medication with a severe-interaction
catalog, and the one-mode projection of a prescriber-patient network.

Run:  python demos/04_compare_and_combine.py
"""

import io
from pathlib import Path

from dpnet import (
    bipartite_from_edges,
    combine_intersection,
    compare,
    ddi_mask,
    from_edge_list,
    load_network,
    project,
    top_shifted,
)
from dpnet.report import comparison_table

ROOT = Path(__file__).resolve().parents[1]

# ------------------------------------------------- temporal comparison
year_a = from_edge_list(sorted([
    ("drug-1", "drug-2", 20.0),   # 20 patients this year, 10 the next -> ratio 2
    ("drug-1", "drug-3", 15.0),
    ("drug-2", "drug-3", 7.0),
    ("drug-3", "drug-4", 3.0),    # only this year
]))
year_b = from_edge_list(sorted([
    ("drug-1", "drug-2", 10.0),
    ("drug-1", "drug-3", 15.0),   # unchanged
    ("drug-2", "drug-3", 21.0),   # tripled next year
    ("drug-4", "drug-5", 2.0),    # only next year
]))

result = compare(year_a, year_b, mode="ratio")
print(comparison_table(result))
print(f"matched fraction of the union: {result.matched_fraction:.0%}")
print(f"unique to A: {list(result.only_in_a)}; unique to B: {list(result.only_in_b)}")
print("\nbiggest shifts (A over B):", top_shifted(result, "a_over_b", k=2))
print("biggest shifts (B over A):", top_shifted(result, "b_over_a", k=2))

# ------------------------------------------- DDI x co-medication mask
comed = load_network(ROOT / "fixtures" / "sample_edges.csv")
catalog = (ROOT / "data" / "sample_ddi.csv").read_text()
mask = ddi_mask(io.StringIO(catalog))
combined = combine_intersection(comed, mask)
print(f"\nsevere interactions actually co-used ({combined.edge_count} pairs):")
for a, b, w in combined.to_edge_list():
    print(f"  {a} + {b}: {int(w)} patients")

# ------------------------------------------------ bipartite projection
# Prescribers on the left, patients on the right, edge = prescriptions.
bnet = bipartite_from_edges(
    [
        ("dr-1", "pt-1", 3.0),
        ("dr-1", "pt-2", 1.0),
        ("dr-2", "pt-2", 2.0),
        ("dr-2", "pt-3", 1.0),
        ("dr-3", "pt-2", 4.0),
        ("dr-3", "pt-3", 2.0),
    ],
    left_ids=["dr-1", "dr-2", "dr-3"],
    right_ids=["pt-1", "pt-2", "pt-3"],
)
doctors = project(bnet, "left")
print("\nprescribers linked by shared patients:")
for a, b, w in doctors.to_edge_list():
    print(f"  {a} -- {b}: {int(w)} shared")
