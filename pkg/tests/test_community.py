"""Modularity and Louvain community detection."""

from __future__ import annotations

import math
import random

import pytest

from dpnet import (
    DataError,
    UnsupportedModeError,
    from_edge_list,
    louvain,
    modularity_q,
)
from conftest import build_net, planted_clique_graph, random_connected_graph
from oracles import best_modularity_oracle

TWO_TRIANGLES = [("A", "B"), ("A", "C"), ("B", "C"), ("D", "E"), ("D", "F"), ("E", "F")]
BRIDGED = TWO_TRIANGLES + [("C", "D")]


def test_single_community_q_zero():
    net = build_net(TWO_TRIANGLES)
    assignment = {v: 0 for v in net.node_ids()}
    assert modularity_q(net, assignment) == 0.0


def test_disjoint_triangles_q_half():
    net = build_net(TWO_TRIANGLES)
    assignment = {v: (0 if v in "ABC" else 1) for v in net.node_ids()}
    assert abs(modularity_q(net, assignment) - 0.5) < 1e-12


def test_k3_singletons_q_minus_third():
    net = build_net([("A", "B"), ("A", "C"), ("B", "C")])
    assignment = {"A": 0, "B": 1, "C": 2}
    assert abs(modularity_q(net, assignment) - (-1 / 3)) < 1e-12


def test_modularity_uncovered_node_named():
    net = build_net(TWO_TRIANGLES)
    with pytest.raises(DataError, match="'F'"):
        modularity_q(net, {v: 0 for v in "ABCDE"})


def test_modularity_weighted():
    # doubling all weights leaves Q unchanged
    net1 = build_net(TWO_TRIANGLES, weights=[1] * 6)
    net2 = build_net(TWO_TRIANGLES, weights=[2] * 6)
    assignment = {v: (0 if v in "ABC" else 1) for v in "ABCDEF"}
    assert math.isclose(
        modularity_q(net1, assignment), modularity_q(net2, assignment)
    )


def test_modularity_directed_unsupported():
    net = from_edge_list([("A", "B", 1.0)], directed=True)
    with pytest.raises(UnsupportedModeError):
        modularity_q(net, {"A": 0, "B": 0})


# -- louvain ---------------------------------------------------------------------

def test_louvain_recovers_bridged_triangles():
    net = build_net(BRIDGED)
    part = louvain(net, seed=42)
    a = part.assignment
    assert a["A"] == a["B"] == a["C"]
    assert a["D"] == a["E"] == a["F"]
    assert a["A"] != a["D"]
    best_q, _ = best_modularity_oracle(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
    assert part.modularity_q >= 0.95 * best_q


def test_louvain_complete_graph_single_module():
    pairs = [(a, b) for a in "ABCD" for b in "ABCD" if a < b]
    part = louvain(build_net(pairs), seed=42)
    assert part.module_count == 1
    assert part.modularity_q == 0.0


def test_louvain_disjoint_triangles():
    part = louvain(build_net(TWO_TRIANGLES), seed=42)
    assert part.module_count == 2
    assert abs(part.modularity_q - 0.5) < 1e-12


def test_louvain_q_matches_recomputation():
    rng = random.Random(77)
    n, edges = random_connected_graph(rng, n_min=8, n_max=16)
    names = [f"N{i}" for i in range(n)]
    net = build_net([(names[a], names[b]) for a, b in edges])
    part = louvain(net, seed=3)
    assert part.modularity_q == modularity_q(net, part.assignment)


def test_louvain_partition_invariants():
    net = build_net(BRIDGED)
    part = louvain(net, seed=9)
    ids = sorted(part.assignment.values())
    assert min(ids) == 0
    assert set(ids) == set(range(part.module_count))  # dense module ids
    assert sum(part.module_sizes.values()) == net.node_count
    sizes = [part.module_sizes[m] for m in sorted(part.module_sizes)]
    assert sizes == sorted(sizes, reverse=True)  # labeled by descending size


def test_louvain_fixed_seed_reproducible():
    rng = random.Random(123)
    n, edges = random_connected_graph(rng, n_min=10, n_max=20)
    names = [f"N{i}" for i in range(n)]
    net = build_net([(names[a], names[b]) for a, b in edges])
    first = louvain(net, seed=7)
    second = louvain(net, seed=7)
    assert first.assignment == second.assignment
    assert first.modularity_q == second.modularity_q


def test_louvain_q_never_negative():
    for seed in range(10):
        rng = random.Random(seed)
        n, edges = random_connected_graph(rng, n_min=4, n_max=10)
        names = [f"N{i}" for i in range(n)]
        net = build_net([(names[a], names[b]) for a, b in edges])
        assert louvain(net, seed=seed).modularity_q >= 0.0


def test_louvain_requires_edges():
    with pytest.raises(DataError):
        louvain(from_edge_list([]))


def test_louvain_near_optimal_on_small_graphs():
    hits = 0
    for seed in range(30):
        rng = random.Random(seed)
        n, edges = planted_clique_graph(rng)
        names = [f"N{i}" for i in range(n)]
        net = build_net([(names[a], names[b]) for a, b in edges])
        part = louvain(net, seed=42)
        best_q, _ = best_modularity_oracle(n, edges)
        assert part.modularity_q + 1e-9 >= 0.95 * best_q
        if part.modularity_q >= best_q - 1e-12:
            hits += 1
    assert hits >= 25  # the greedy finds the exact optimum almost always here


def test_louvain_resolution_changes_granularity():
    net = build_net(BRIDGED)
    coarse = louvain(net, resolution=0.1, seed=42)
    fine = louvain(net, resolution=4.0, seed=42)
    assert coarse.module_count <= fine.module_count
