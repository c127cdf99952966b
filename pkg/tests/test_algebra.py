"""Network combination, comparison and bipartite projection."""

from __future__ import annotations

import random

import pytest

from dpnet import (
    DataError,
    bipartite_from_edges,
    combine_intersection,
    compare,
    from_edge_list,
    project,
    top_shifted,
)
from conftest import build_net, net_from_weights, random_weighted_pairs
from oracles import comparison_oracle, projection_oracle


# -- combine_intersection ---------------------------------------------------------

def test_combine_keeps_shared_edges_with_first_weights():
    weighted = build_net([("X", "Y"), ("Y", "Z")], weights=[5, 3])
    mask = build_net([("Y", "Z")])
    combined = combine_intersection(weighted, mask)
    assert combined.to_edge_list() == [("Y", "Z", 3.0)]
    assert set(combined.node_ids()) == {"Y", "Z"}


def test_combine_disjoint_is_empty():
    weighted = build_net([("X", "Y")], weights=[5])
    mask = build_net([("A", "B")])
    combined = combine_intersection(weighted, mask)
    assert combined.node_count == 0
    assert combined.edge_count == 0


def test_combine_superset_mask_is_identity():
    weighted = build_net([("X", "Y"), ("Y", "Z")], weights=[5, 3])
    mask = build_net([("X", "Y"), ("X", "Z"), ("Y", "Z")])
    combined = combine_intersection(weighted, mask)
    assert combined.to_edge_list() == weighted.to_edge_list()


def test_combine_commutative_in_membership():
    rng = random.Random(4)
    wa = random_weighted_pairs(rng, n_max=12, max_edges=30)
    wb = random_weighted_pairs(rng, n_max=12, max_edges=30)
    a, b = net_from_weights(wa), net_from_weights(wb)
    ab = combine_intersection(a, b)
    ba = combine_intersection(b, a)
    assert {(x, y) for x, y, _ in ab.to_edge_list()} == {
        (x, y) for x, y, _ in ba.to_edge_list()
    }
    # weights re-sourced from the weighted argument
    for x, y, w in ab.to_edge_list():
        assert w == wa[(x, y)]


def test_combine_preserves_node_metadata():
    weighted = from_edge_list(
        [("B01AC06", "C10AA01", 5.0)], labels={"C10AA01": "Simvastatin"}
    )
    mask = build_net([("B01AC06", "C10AA01")])
    combined = combine_intersection(weighted, mask)
    assert combined.node("C10AA01").label == "Simvastatin"
    assert combined.node("B01AC06").attributes["anatomical"] == "B"


# -- compare ------------------------------------------------------------------------

def test_compare_ratio_worked_example():
    # a pair used by 20 patients in A and 10 in B compares to ratio 2
    a = build_net([("X", "Y")], weights=[20])
    b = build_net([("X", "Y")], weights=[10])
    result = compare(a, b, mode="ratio")
    assert result.matched[0].value == 2.0
    assert result.classification == {
        "lower_in_a": 0, "no_change": 0, "higher_in_a": 1
    }


def test_compare_equal_weights_no_change():
    a = build_net([("X", "Y")], weights=[7])
    b = build_net([("X", "Y")], weights=[7])
    result = compare(a, b)
    assert result.matched[0].value == 1.0
    assert result.classification["no_change"] == 1


def test_compare_disjoint_edges():
    a = build_net([("X", "Y")], weights=[4])
    b = build_net([("Y", "Z")], weights=[2])
    result = compare(a, b)
    assert result.matched == ()
    assert result.only_in_a == (("X", "Y"),)
    assert result.only_in_b == (("Y", "Z"),)
    assert result.matched_fraction == 0.0


def test_compare_difference_mode():
    a = build_net([("X", "Y")], weights=[4])
    b = build_net([("X", "Y")], weights=[6])
    result = compare(a, b, mode="difference")
    assert result.matched[0].value == -2.0
    assert result.classification["lower_in_a"] == 1


def test_compare_self_is_all_no_change():
    rng = random.Random(8)
    weights = random_weighted_pairs(rng, n_max=20, max_edges=60)
    net = net_from_weights(weights)
    result = compare(net, net)
    assert len(result.matched) == len(weights)
    assert result.classification["no_change"] == len(weights)
    assert all(m.value == 1.0 for m in result.matched)
    assert result.matched_fraction == (1.0 if weights else 0.0)


def test_compare_fractions_union_and_per_network():
    a = net_from_weights({("P", "Q"): 1, ("Q", "R"): 2})
    b = net_from_weights({("P", "Q"): 1, ("R", "S"): 1, ("S", "T"): 1})
    result = compare(a, b)
    assert result.matched_fraction == 1 / 4
    assert result.matched_fraction_a == 1 / 2
    assert result.matched_fraction_b == 1 / 3


def test_compare_invariants_vs_oracle_on_random_pairs():
    for seed in range(40):
        rng = random.Random(seed)
        wa = random_weighted_pairs(rng, n_max=25, max_edges=80)
        wb = random_weighted_pairs(rng, n_max=25, max_edges=80)
        result = compare(net_from_weights(wa), net_from_weights(wb))
        matched_o, only_a_o, only_b_o, counts_o = comparison_oracle(wa, wb)
        assert {m.pair for m in result.matched} == matched_o
        assert set(result.only_in_a) == only_a_o
        assert set(result.only_in_b) == only_b_o
        assert dict(result.classification) == counts_o
        assert {m.pair for m in result.matched} | set(result.only_in_a) == set(wa)
        assert {m.pair for m in result.matched} | set(result.only_in_b) == set(wb)
        assert sum(result.classification.values()) == len(result.matched)


def test_compare_requires_weighted_undirected():
    unweighted = from_edge_list([("A", "B", 1.0)], weighted=False)
    weighted = build_net([("A", "B")], weights=[2])
    with pytest.raises(DataError):
        compare(unweighted, weighted)


def test_compare_bad_mode():
    net = build_net([("A", "B")], weights=[1])
    with pytest.raises(DataError):
        compare(net, net, mode="quotient")


def test_compare_zero_divisor_guarded():
    # weights from aggregation are >= 1, but a hand-built zero must not slip
    # through as an infinity
    a = build_net([("A", "B")], weights=[3])
    b = build_net([("A", "B")], weights=[0])
    with pytest.raises(DataError, match="zero weight"):
        compare(a, b, mode="ratio")
    result = compare(a, b, mode="difference")
    assert result.matched[0].value == 3.0


# -- top_shifted -----------------------------------------------------------------------

def comparison_fixture():
    a = net_from_weights({("A", "B"): 21, ("C", "D"): 6, ("E", "F"): 10})
    b = net_from_weights({("A", "B"): 1, ("C", "D"): 2, ("E", "F"): 5})
    return compare(a, b)  # ratios: 21, 3, 2


def test_top_shifted_picks_largest_ratio():
    result = comparison_fixture()
    top = top_shifted(result, "a_over_b", k=1)
    assert top == [(("A", "B"), 21.0)]


def test_top_shifted_inverse_direction():
    result = comparison_fixture()
    top = top_shifted(result, "b_over_a", k=2)
    assert top[0] == (("E", "F"), 0.5)
    assert top[1][0] == ("C", "D")


def test_top_shifted_k_exceeds_matches():
    result = comparison_fixture()
    assert len(top_shifted(result, "a_over_b", k=10)) == 3


def test_top_shifted_tie_break_canonical():
    a = net_from_weights({("A", "Z"): 4, ("B", "C"): 4})
    b = net_from_weights({("A", "Z"): 2, ("B", "C"): 2})
    top = top_shifted(compare(a, b), "a_over_b", k=2)
    assert [p for p, _ in top] == [("A", "Z"), ("B", "C")]


def test_top_shifted_requires_ratio_mode():
    a = net_from_weights({("A", "B"): 2})
    result = compare(a, a, mode="difference")
    with pytest.raises(DataError):
        top_shifted(result, "a_over_b", k=1)


def test_top_shifted_rejects_bad_k():
    with pytest.raises(DataError):
        top_shifted(comparison_fixture(), "a_over_b", k=0)


# -- bipartite ---------------------------------------------------------------------------

def test_bipartite_basic_degrees():
    bnet = bipartite_from_edges(
        [("d1", "p1", 3.0), ("d1", "p2", 1.0)],
        left_ids=["d1"],
        right_ids=["p1", "p2"],
    )
    assert bnet.left_ids == ["d1"]
    assert len(bnet.edges) == 2


def test_bipartite_same_side_edge_rejected():
    with pytest.raises(DataError, match="one side"):
        bipartite_from_edges(
            [("p1", "p2", 1.0)], left_ids=["d1"], right_ids=["p1", "p2"]
        )


def test_bipartite_empty_input():
    bnet = bipartite_from_edges([], left_ids=["d1"], right_ids=["p1"])
    assert bnet.edges == ()


def test_bipartite_overlapping_sides_rejected():
    with pytest.raises(DataError, match="both sides"):
        bipartite_from_edges([], left_ids=["x"], right_ids=["x"])


def test_bipartite_normalizes_orientation():
    bnet = bipartite_from_edges(
        [("p1", "d1", 2.0)], left_ids=["d1"], right_ids=["p1"]
    )
    assert bnet.edges == (("d1", "p1", 2.0),)


def test_bipartite_unknown_endpoint_rejected():
    with pytest.raises(DataError, match="ghost"):
        bipartite_from_edges([("d1", "ghost", 1.0)], ["d1"], ["p1"])


# -- projection -----------------------------------------------------------------------------

def test_project_shared_counterpart():
    bnet = bipartite_from_edges(
        [("d1", "p1", 1.0), ("d1", "p2", 1.0), ("d2", "p2", 1.0)],
        left_ids=["d1", "d2"],
        right_ids=["p1", "p2"],
    )
    left = project(bnet, "left")
    assert left.to_edge_list() == [("d1", "d2", 1.0)]


def test_project_no_shared_counterparts():
    bnet = bipartite_from_edges(
        [("d1", "p1", 1.0), ("d2", "p2", 1.0)],
        left_ids=["d1", "d2"],
        right_ids=["p1", "p2"],
    )
    assert project(bnet, "left").edge_count == 0
    assert project(bnet, "left").node_count == 2  # isolated nodes kept


def test_project_counts_shared():
    bnet = bipartite_from_edges(
        [("d1", "p1", 1.0), ("d1", "p2", 1.0), ("d2", "p1", 1.0), ("d2", "p2", 1.0)],
        left_ids=["d1", "d2"],
        right_ids=["p1", "p2"],
    )
    assert project(bnet, "left").to_edge_list() == [("d1", "d2", 2.0)]
    assert project(bnet, "right").to_edge_list() == [("p1", "p2", 2.0)]


def test_project_matches_set_intersection_oracle():
    rng = random.Random(13)
    lefts = [f"d{i}" for i in range(8)]
    rights = [f"p{i}" for i in range(10)]
    edges = [
        (l, r, 1.0) for l in lefts for r in rights if rng.random() < 0.3
    ]
    bnet = bipartite_from_edges(edges, lefts, rights)
    expected = projection_oracle([(l, r) for l, r, _ in edges], lefts)
    got = {(a, b): w for a, b, w in project(bnet, "left").to_edge_list()}
    assert got == {pair: float(w) for pair, w in expected.items()}
