import random

import pytest
from hypothesis import given, settings

from artinrf.graph import CoxeterGraph, label_isomorphism
from artinrf.partition import (
    CONDITION_EVEN_TF,
    CONDITION_FOREST,
    Partition,
    PartitionError,
    enumerate_admissible,
    find_certifying_partition,
    is_admissible,
    quotient,
    singleton_partition,
)
from artinrf.recognizers import BaseKind, BaseTag
from artinrf.corpus import random_graph

from helpers import (
    brute_force_admissible,
    coxeter_graphs,
    graph_from_labels,
    naive_cross_edge_admissible,
)

BELL = {0: 1, 1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877}

TRIANGLE = graph_from_labels(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3})
PATH_34 = graph_from_labels(3, {(0, 1): 3, (1, 2): 4})


def test_partition_canonical_form():
    p = Partition([["c"], ["b", "a"]])
    assert p.cells == (("a", "b"), ("c",))
    assert repr(p) == "Partition({a,b|c})"
    assert p == Partition([["a", "b"], ["c"]])


@pytest.mark.parametrize(
    "cells, message",
    [
        ([[]], "empty cell"),
        ([["a"], ["a"]], "two cells"),
        ([["a", "a"]], "repeated vertex"),
    ],
)
def test_partition_invalid(cells, message):
    with pytest.raises(PartitionError, match=message):
        Partition(cells)


def test_singleton_partition_always_admissible():
    for g in (TRIANGLE, PATH_34, CoxeterGraph([], [])):
        assert is_admissible(g, singleton_partition(g))


def test_admissibility_examples():
    # Frozen from the naive cross-edge counter: two edges join {a,b} to {c}.
    assert not naive_cross_edge_admissible(TRIANGLE, [["a", "b"], ["c"]])
    assert not is_admissible(TRIANGLE, Partition([["a", "b"], ["c"]]))
    assert naive_cross_edge_admissible(PATH_34, [["a", "b"], ["c"]])
    assert is_admissible(PATH_34, Partition([["a", "b"], ["c"]]))


def test_admissibility_requires_partition_of_graph():
    with pytest.raises(PartitionError, match="covers"):
        is_admissible(PATH_34, Partition([["a", "b"]]))
    with pytest.raises(PartitionError, match="covers"):
        is_admissible(PATH_34, Partition([["a", "b"], ["c"], ["z"]]))


def test_quotient_of_path():
    q, witnesses = quotient(PATH_34, Partition([["a", "b"], ["c"]]))
    # Hand application of the definition: one edge, labelled 4, witnessed by (b, c).
    assert q == CoxeterGraph(["a", "c"], [("a", "c", 4)])
    assert witnesses == {("a", "c"): ("b", "c", 4)}


def test_quotient_under_singletons_is_the_graph_itself():
    q, witnesses = quotient(PATH_34, singleton_partition(PATH_34))
    assert q == PATH_34
    assert label_isomorphism(q, PATH_34) is not None
    assert witnesses == {("a", "b"): ("a", "b", 3), ("b", "c"): ("b", "c", 4)}


def test_quotient_of_edgeless_graph():
    g = CoxeterGraph(["a", "b", "c"], [])
    q, witnesses = quotient(g, Partition([["a", "b"], ["c"]]))
    assert q == CoxeterGraph(["a", "c"], [])
    assert witnesses == {}


def test_quotient_rejects_inadmissible():
    with pytest.raises(PartitionError, match="ill-defined"):
        quotient(TRIANGLE, Partition([["a", "b"], ["c"]]))


@given(coxeter_graphs(max_vertices=5))
@settings(max_examples=40, deadline=None)
def test_quotient_edge_labels_match_their_witness_edges(g):
    for p in enumerate_admissible(g):
        q, witnesses = quotient(g, p)
        assert set(witnesses) == {(a, b) for a, b, _ in q.edges()}
        for a, b, m in q.edges():
            ws, wt, wm = witnesses[(a, b)]
            assert wm == m
            assert g.label(ws, wt) == m
            cells = {p.cell_index(ws), p.cell_index(wt)}
            name_cells = {p.cell_index(a), p.cell_index(b)}
            assert cells == name_cells


def test_enumerate_two_vertex_graph():
    g = CoxeterGraph(["a", "b"], [("a", "b", 3)])
    assert list(enumerate_admissible(g)) == [
        Partition([["a", "b"]]),
        Partition([["a"], ["b"]]),
    ]


def test_enumerate_triangle_has_exactly_two():
    # Frozen from the brute-force oracle over all Bell(3) = 5 partitions:
    # each 2+1 split carries two cross edges, so only the one-cell and
    # all-singleton partitions survive.
    expected = {Partition([["a", "b", "c"]]), Partition([["a"], ["b"], ["c"]])}
    assert brute_force_admissible(TRIANGLE) == expected
    assert set(enumerate_admissible(TRIANGLE)) == expected


def test_enumerate_edgeless_gives_bell_number():
    for n in (0, 1, 2, 3, 4, 5):
        g = CoxeterGraph([chr(ord("a") + i) for i in range(n)], [])
        assert len(list(enumerate_admissible(g))) == BELL[n]


def test_enumerate_order_starts_with_one_cell():
    parts = list(enumerate_admissible(PATH_34))
    assert parts[0] == Partition([["a", "b", "c"]])
    assert parts[-1] == Partition([["a"], ["b"], ["c"]])


def test_enumerate_follows_growth_string_order():
    # For three free vertices the growth strings run 000, 001, 010, 011, 012.
    g = CoxeterGraph(["a", "b", "c"], [])
    assert list(enumerate_admissible(g)) == [
        Partition([["a", "b", "c"]]),
        Partition([["a", "b"], ["c"]]),
        Partition([["a", "c"], ["b"]]),
        Partition([["a"], ["b", "c"]]),
        Partition([["a"], ["b"], ["c"]]),
    ]


@given(coxeter_graphs(max_vertices=6))
@settings(max_examples=60, deadline=None)
def test_enumerate_matches_brute_force(g):
    enumerated = list(enumerate_admissible(g))
    assert len(enumerated) == len(set(enumerated))
    assert set(enumerated) == brute_force_admissible(g)


def test_enumerate_matches_brute_force_seeded_seven_vertices():
    rng = random.Random(20240811)
    for _ in range(10):
        g = random_graph(rng, 7, edge_prob=0.4)
        assert set(enumerate_admissible(g)) == brute_force_admissible(g)


# --- find_certifying_partition ---------------------------------------------------


def test_odd_forest_gets_forest_condition():
    g = graph_from_labels(3, {(0, 1): 3, (1, 2): 5})
    outcome = find_certifying_partition(g)
    assert outcome.plan is not None
    assert outcome.plan.partition == singleton_partition(g)
    assert outcome.plan.condition == CONDITION_FOREST
    assert not outcome.budget_exhausted
    for cell, plan in outcome.plan.cell_plans.items():
        assert isinstance(plan, BaseTag)
        assert plan.kind is BaseKind.SIZE_LEQ_TWO


def test_even_triangle_free_gets_even_condition():
    g = graph_from_labels(4, {(0, 1): 4, (1, 2): 2, (2, 3): 6, (0, 3): 2})
    outcome = find_certifying_partition(g)
    assert outcome.plan is not None
    assert outcome.plan.partition == singleton_partition(g)
    assert outcome.plan.condition == CONDITION_EVEN_TF


def test_triangle_yields_nothing_without_axioms():
    outcome = find_certifying_partition(TRIANGLE)
    assert outcome.plan is None
    assert not outcome.budget_exhausted
    assert outcome.nodes_visited == 2  # both admissible partitions examined


def test_triangle_with_axiom_uses_one_cell_partition():
    outcome = find_certifying_partition(TRIANGLE, axioms=[("tri", TRIANGLE)])
    assert outcome.plan is not None
    assert outcome.plan.partition == Partition([["a", "b", "c"]])
    plan = outcome.plan.cell_plans[("a", "b", "c")]
    assert isinstance(plan, BaseTag) and plan.kind is BaseKind.USER_AXIOM


def test_budget_exhaustion_is_flagged():
    outcome = find_certifying_partition(TRIANGLE, budget=1)
    assert outcome.plan is None
    assert outcome.budget_exhausted
    assert outcome.nodes_visited == 1


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        find_certifying_partition(TRIANGLE, budget=0)


def test_search_is_deterministic():
    g = graph_from_labels(5, {(0, 1): 4, (1, 2): 2, (2, 3): 4, (3, 4): 2})
    first = find_certifying_partition(g)
    second = find_certifying_partition(g)
    assert first.plan.partition == second.plan.partition
    assert first.plan.condition == second.plan.condition
    assert first.nodes_visited == second.nodes_visited
