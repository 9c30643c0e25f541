"""Synthetic data and random hidden relations."""

import pytest

from pskyline import skyline, validate
from pskyline.pexpr import is_full, is_normalized
from pskyline.synth import KINDS, generate, random_hidden_relation

from conftest import numeric_schema


def test_generate_shape_and_ids():
    data = generate("uniform", 25, 4, seed=0)
    assert len(data) == 25
    assert len(data.schema) == 4
    assert data.schema.names() == ["a1", "a2", "a3", "a4"]
    assert data.ids() == [str(i) for i in range(1, 26)]
    assert all(isinstance(v, int) for t in data for v in t.values)
    assert all(a.scale == 6 for a in data.schema)


def test_generate_is_deterministic_per_seed():
    a = generate("correlated", 50, 3, seed=7)
    b = generate("correlated", 50, 3, seed=7)
    c = generate("correlated", 50, 3, seed=8)
    assert [t.values for t in a] == [t.values for t in b]
    assert [t.values for t in a] != [t.values for t in c]


def test_generate_kinds_differ():
    rows = {
        kind: tuple(generate(kind, 10, 3, seed=5).tuples[0].values)
        for kind in KINDS
    }
    assert len(set(rows.values())) == 3


def test_generate_rejects_bad_arguments():
    with pytest.raises(ValueError):
        generate("gaussian", 10, 3, seed=0)
    with pytest.raises(ValueError):
        generate("uniform", -1, 3, seed=0)
    with pytest.raises(ValueError):
        generate("uniform", 10, 0, seed=0)


def test_anticorrelated_data_has_a_larger_skyline():
    """Near-constant row sums put most rows on the trade-off frontier."""
    for seed in (7, 11):
        anti = len(skyline(generate("anticorrelated", 500, 2, seed=seed)))
        uni = len(skyline(generate("uniform", 500, 2, seed=seed)))
        assert anti > 2 * uni


def test_correlated_data_has_a_small_skyline():
    corr = len(skyline(generate("correlated", 500, 4, seed=3)))
    uni = len(skyline(generate("uniform", 500, 4, seed=3)))
    assert corr < uni


def test_random_hidden_relation_is_valid_and_full():
    s = numeric_schema(5)
    for seed in range(30):
        rel = random_hidden_relation(s, seed=seed)
        assert is_full(s, rel.tree)
        assert is_normalized(rel.tree)
        assert validate(s, rel.graph.edges()).ok


def test_random_hidden_relation_is_deterministic():
    s = numeric_schema(4)
    assert random_hidden_relation(s, seed=42) == random_hidden_relation(s, seed=42)


def test_random_hidden_relation_covers_every_shape(rels3):
    """1000 seeds over three attributes reach all 19 relations."""
    s = numeric_schema(3)
    seen = {random_hidden_relation(s, seed=seed).graph for seed in range(1000)}
    assert seen == {r.graph for r in rels3}
