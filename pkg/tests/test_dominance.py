"""Dominance testing and the winnow/skyline operators."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pskyline import (
    PSkylineRelation,
    bet_in,
    diff,
    dominates,
    dominates_decomposition,
    dominates_semantic,
    pareto_dominates,
    sky_relation,
    skyline,
    top,
    winnow,
)
from pskyline.dominance import (
    VECTOR_MIN_ROWS,
    _winnow_pairs,
    _winnow_vector,
    find_dominator,
)
from pskyline.model import Dataset, Tuple
from pskyline.pgraph import PGraph
from pskyline.synth import generate, random_hidden_relation

from conftest import numeric_schema

S7 = numeric_schema(7)
G7 = PGraph.from_edges(
    S7, [(0, 1), (2, 3), (2, 5), (2, 6), (4, 3), (4, 5), (4, 6), (5, 6)]
)
R7 = PSkylineRelation.from_graph(G7)
T1 = Tuple("t1", (1, 1, 1, 1, 1, 1, 1))
T2 = Tuple("t2", (2, 0, 1, 0, 2, 1, 0))
T3 = Tuple("t3", (2, 0, 1, 0, 1, 2, 0))


def test_cars_skyline(cars):
    assert [t.id for t in skyline(cars)] == ["t1", "t2", "t3", "t4"]


def test_cars_winnow_year_over_price_make(cars):
    rel = PSkylineRelation.from_expr(cars.schema, "year & (price * make)")
    assert [t.id for t in winnow(rel, cars)] == ["t2", "t4"]


def test_attribute_set_views_of_a_pair():
    assert bet_in(S7, T1, T2).names(S7) == ["A2", "A4", "A7"]
    assert bet_in(S7, T2, T1).names(S7) == ["A1", "A5"]
    assert diff(S7, T1, T2).names(S7) == ["A1", "A2", "A4", "A5", "A7"]
    assert top(R7, T1, T2).names(S7) == ["A1", "A5"]
    assert top(R7, T1, T3).names(S7) == ["A1", "A4", "A6"]


def test_seven_attribute_dominance_table():
    assert dominates(R7, T2, T1)
    assert not dominates(R7, T1, T2)
    assert not dominates(R7, T3, T1)
    assert not dominates(R7, T1, T3)


def test_equal_valued_tuples_never_dominate():
    t = Tuple("a", (1, 1, 1, 1, 1, 1, 1))
    u = Tuple("b", (1, 1, 1, 1, 1, 1, 1))
    assert not dominates(R7, t, u)
    assert not dominates_semantic(R7, t, u)


def test_semantic_route_agrees_on_the_worked_example():
    for a, b in [(T1, T2), (T2, T1), (T1, T3), (T3, T1), (T2, T3), (T3, T2)]:
        assert dominates_semantic(R7, a, b) == dominates(R7, a, b)


def test_decomposition_route_agrees_on_cars(cars):
    rel = PSkylineRelation.from_expr(cars.schema, "year & (price * make)")
    for a in cars:
        for b in cars:
            assert dominates_decomposition(rel, a, b, universe=cars) == dominates(
                rel, a, b
            )


def test_pareto_dominance_is_sky_dominance(cars):
    t2, t5 = cars.by_id("t2"), cars.by_id("t5")
    assert pareto_dominates(cars.schema, t2, t5)
    assert not pareto_dominates(cars.schema, t5, t2)
    assert dominates(sky_relation(cars.schema), t2, t5)


def test_sky_relation_has_empty_graph(cars):
    rel = sky_relation(cars.schema)
    assert rel.graph.edges() == []
    assert rel.expression() == "make * price * year"
    assert [t.id for t in winnow(rel, cars)] == [t.id for t in skyline(cars)]


def test_relation_equality_is_by_graph(cars_schema):
    r1 = PSkylineRelation.from_expr(cars_schema, "make & price & year")
    r2 = PSkylineRelation.from_expr(cars_schema, "make & (price & year)")
    assert r1 == r2
    assert hash(r1) == hash(r2)


def test_from_expr_requires_every_attribute(cars_schema):
    with pytest.raises(ValueError, match="missing"):
        PSkylineRelation.from_expr(cars_schema, "make & price")


def test_find_dominator(cars):
    assert find_dominator(cars, "t5") == "t2"
    assert find_dominator(cars, "t1") is None
    total = PSkylineRelation.from_expr(cars.schema, "price & make & year")
    assert find_dominator(cars, "t1", total) == "t3"
    assert find_dominator(cars, "t3", total) is None


def test_winnow_vector_path_matches_pairwise():
    data = generate("uniform", 400, 5, seed=3)
    assert len(data) >= VECTOR_MIN_ROWS
    for seed in (0, 1, 2):
        rel = random_hidden_relation(data.schema, seed=seed)
        direct = _winnow_pairs(rel.graph, data)
        vector = _winnow_vector(rel.graph.children, data)
        assert direct == vector
        kept = [t.id for t in winnow(rel, data)]
        assert kept == [t.id for t, k in zip(data, direct) if k]


def test_skyline_matches_brute_force_pareto():
    data = generate("anticorrelated", 350, 4, seed=9)
    sky_ids = {t.id for t in skyline(data)}
    expect = {
        t.id
        for t in data
        if not any(pareto_dominates(data.schema, u, t) for u in data)
    }
    assert sky_ids == expect


# --- order-theoretic properties ---------------------------------------------

small_tuples = st.lists(
    st.tuples(*(st.integers(0, 2) for _ in range(4))), min_size=3, max_size=6
)


@settings(max_examples=60, deadline=None)
@given(small_tuples, st.integers(0, 10_000))
def test_dominance_is_a_strict_partial_order(rows, rel_seed):
    s = numeric_schema(4)
    rel = random_hidden_relation(s, seed=rel_seed)
    ts = [Tuple(str(i), v) for i, v in enumerate(rows)]
    for a in ts:
        assert not dominates(rel, a, a)
        for b in ts:
            if dominates(rel, a, b):
                assert not dominates(rel, b, a)
            for c in ts:
                if dominates(rel, a, b) and dominates(rel, b, c):
                    assert dominates(rel, a, c)


@settings(max_examples=60, deadline=None)
@given(small_tuples, st.integers(0, 10_000))
def test_winnow_is_within_the_skyline(rows, rel_seed):
    s = numeric_schema(4)
    rel = random_hidden_relation(s, seed=rel_seed)
    data = Dataset(s, [Tuple(str(i), v) for i, v in enumerate(dict.fromkeys(rows))])
    kept = {t.id for t in winnow(rel, data)}
    assert kept <= {t.id for t in skyline(data)}
    assert kept  # a finite non-empty set always has undominated members
