import pytest
from hypothesis import given
from hypothesis import strategies as st

from pskyline import (
    AttrSet,
    DataError,
    Dataset,
    Ordering,
    Schema,
    SchemaError,
    Tuple,
    compare_values,
    dump_dataset_csv,
    load_dataset_csv,
    load_schema,
    schema_to_json,
)
from pskyline.model import (
    AttributeSpec,
    format_numeric_cell,
    parse_numeric_cell,
    rank_value,
)

from conftest import CARS_CSV, numeric_schema


def test_numeric_attribute_requires_direction():
    with pytest.raises(SchemaError):
        AttributeSpec(name="x", kind="numeric")
    with pytest.raises(SchemaError):
        AttributeSpec.numeric("x", direction="up")


def test_categorical_attribute_requires_ranked_values():
    with pytest.raises(SchemaError):
        AttributeSpec(name="x", kind="categorical")
    with pytest.raises(SchemaError):
        AttributeSpec.categorical("x", ["a", "b", "a"])


def test_attribute_rejects_mixed_and_unknown_kinds():
    with pytest.raises(SchemaError):
        AttributeSpec(name="x", kind="numeric", direction="higher", ranked=("a",))
    with pytest.raises(SchemaError):
        AttributeSpec(name="x", kind="categorical", ranked=("a",), direction="lower")
    with pytest.raises(SchemaError):
        AttributeSpec(name="x", kind="ordinal")
    with pytest.raises(SchemaError):
        AttributeSpec(name="", kind="numeric", direction="higher")


def test_numeric_scale_bounds():
    AttributeSpec.numeric("x", scale=18)
    with pytest.raises(SchemaError):
        AttributeSpec.numeric("x", scale=19)
    with pytest.raises(SchemaError):
        AttributeSpec.numeric("x", scale=-1)
    with pytest.raises(SchemaError):
        AttributeSpec(name="x", kind="categorical", ranked=("a",), scale=2)


def test_schema_rejects_duplicate_names():
    a = AttributeSpec.numeric("x")
    with pytest.raises(SchemaError, match="duplicate"):
        Schema((a, a))


def test_schema_lookup_and_iteration():
    s = numeric_schema(3)
    assert s.names() == ["A1", "A2", "A3"]
    assert s.index("A2") == 1
    assert len(s) == 3
    assert [a.name for a in s] == s.names()
    assert s[0].name == "A1"
    assert s.all_attrs().bits == 0b111
    with pytest.raises(SchemaError):
        s.index("nope")


class TestAttrSet:
    def test_construction_and_views(self):
        s = numeric_schema(4)
        made = AttrSet.from_names(s, ["A3", "A1"])
        assert made.bits == 0b101
        assert made.names(s) == ["A1", "A3"]
        assert list(made) == [0, 2]
        assert len(made) == 2
        assert 2 in made and 1 not in made

    def test_algebra(self):
        a, b = AttrSet(0b011), AttrSet(0b110)
        assert (a | b).bits == 0b111
        assert (a & b).bits == 0b010
        assert (a - b).bits == 0b001
        assert AttrSet(0b001) <= a
        assert AttrSet(0b001) < a
        assert not a < a
        assert a >= AttrSet(0b001)
        assert AttrSet(0b001).isdisjoint(AttrSet(0b100))
        assert not AttrSet(0)
        assert AttrSet(0b10)

    def test_of_builder(self):
        assert AttrSet.of().bits == 0
        assert AttrSet.of(0, 2).bits == 0b101


def test_dataset_rejects_duplicate_ids():
    s = numeric_schema(1)
    with pytest.raises(DataError, match="duplicate"):
        Dataset(s, [Tuple("a", (1,)), Tuple("a", (2,))])


def test_dataset_rejects_arity_mismatch():
    s = numeric_schema(2)
    with pytest.raises(DataError, match="values"):
        Dataset(s, [Tuple("a", (1,))])


def test_dataset_value_typing():
    s = numeric_schema(1)
    with pytest.raises(DataError, match="scaled int"):
        Dataset(s, [Tuple("a", ("1",))])
    with pytest.raises(DataError, match="scaled int"):
        Dataset(s, [Tuple("a", (True,))])
    with pytest.raises(DataError, match="64-bit"):
        Dataset(s, [Tuple("a", (1 << 63,))])
    cat = Schema((AttributeSpec.categorical("c", ["hi", "lo"]),))
    with pytest.raises(DataError, match="token"):
        Dataset(cat, [Tuple("a", (3,))])
    with pytest.raises(DataError, match="ranked"):
        Dataset(cat, [Tuple("a", ("mid",))])


def test_dataset_lookup_and_subset(cars):
    assert cars.ids() == ["t1", "t2", "t3", "t4", "t5"]
    assert "t3" in cars and "t9" not in cars
    assert cars.by_id("t2").values[0] == "bmw"
    assert cars.index_of("t4") == 3
    sub = cars.subset(["t4", "t1"])
    assert sub.ids() == ["t1", "t4"]  # dataset order, not request order
    with pytest.raises(DataError):
        cars.subset(["t1", "t9"])
    with pytest.raises(DataError):
        cars.by_id("t9")


def test_ranks_fold_direction_into_sign(cars):
    """Ranks must make every comparison a plain >, whatever the attribute kind."""
    make, price, year = (cars.schema.index(n) for n in ("make", "price", "year"))
    r = {t.id: cars.ranks[i] for i, t in enumerate(cars.tuples)}
    assert r["t2"][make] > r["t1"][make] > r["t3"][make]  # bmw > ford > kia
    assert r["t3"][price] > r["t1"][price]  # cheaper is better
    assert r["t2"][year] > r["t1"][year]
    assert cars.ranks is cars.ranks  # cached


def test_compare_values_orderings():
    num = AttributeSpec.numeric("p", direction="lower")
    assert compare_values(num, 10, 20) is Ordering.BETTER
    assert compare_values(num, 20, 10) is Ordering.WORSE
    assert compare_values(num, 7, 7) is Ordering.EQUAL
    cat = AttributeSpec.categorical("m", ["bmw", "ford", "kia"])
    assert compare_values(cat, "bmw", "kia") is Ordering.BETTER
    assert rank_value(cat, "bmw") > rank_value(cat, "ford") > rank_value(cat, "kia")


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_compare_values_matches_rank_order(v1, v2):
    attr = AttributeSpec.numeric("x", direction="lower")
    got = compare_values(attr, v1, v2)
    r1, r2 = rank_value(attr, v1), rank_value(attr, v2)
    want = Ordering.BETTER if r1 > r2 else Ordering.WORSE if r1 < r2 else Ordering.EQUAL
    assert got is want


def test_load_schema_round_trip(cars_schema):
    again = load_schema(schema_to_json(cars_schema))
    assert again == cars_schema


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        "[]",
        '{"attributes": [{"name": "x", "kind": "numeric", "preference": "higher", "extra": 1}]}',
        '{"attributes": [{"name": "x", "kind": "numeric", "preference": "higher", "ranked": []}]}',
        '{"attributes": [{"name": "x", "kind": "categorical", "ranked": [], "scale": 1}]}',
        '{"attributes": [{"name": "x", "kind": "categorical", "ranked": "abc"}]}',
        '{"attributes": [{"name": "x", "kind": "mystery"}]}',
        '{"attributes": [{"name": "x", "kind": "numeric", "preference": "higher", "scale": "2"}]}',
    ],
)
def test_load_schema_rejects_malformed_documents(doc):
    with pytest.raises(SchemaError):
        load_schema(doc)


def test_csv_round_trip(cars_schema, cars):
    assert load_dataset_csv(cars_schema, dump_dataset_csv(cars)).ids() == cars.ids()
    assert dump_dataset_csv(cars).splitlines()[1] == "t1,ford,30000,2007"


def test_csv_columns_any_order_and_generated_ids(cars_schema):
    text = "year,price,make\n2001,9000,kia\n2002,8000,ford\n"
    d = load_dataset_csv(cars_schema, text)
    assert d.ids() == ["1", "2"]
    assert d.by_id("2").values == ("ford", 8000, 2002)


def test_csv_scale_handling():
    s = Schema((AttributeSpec.numeric("q", scale=2),))
    d = load_dataset_csv(s, "id,q\na,3.5\nb,3.51\n")
    assert d.by_id("a").values == (350,)
    assert d.by_id("b").values == (351,)
    assert format_numeric_cell(s[0], 350) == "3.50"
    with pytest.raises(DataError, match="precision"):
        load_dataset_csv(s, "id,q\na,3.512\n")


@pytest.mark.parametrize(
    "text, pattern",
    [
        ("", "empty"),
        ("id,price,year\nt1,1,2\n", "missing"),
        ("id,make,price,year,color\nt1,kia,1,2,red\n", "unknown CSV column"),
        ("id,make,make,price,year\nt1,kia,kia,1,2\n", "duplicate CSV column"),
        ("id,make,price,year\nt1,kia,1\n", "cells"),
        ("id,make,price,year\n,kia,1,2\n", "empty id"),
        ("id,make,price,year\nt1,kia,abc,2\n", "cannot parse"),
    ],
)
def test_csv_rejects_malformed_input(cars_schema, text, pattern):
    with pytest.raises(DataError, match=pattern):
        load_dataset_csv(cars_schema, text)


def test_csv_skips_blank_lines(cars_schema):
    d = load_dataset_csv(cars_schema, CARS_CSV + "\n\n")
    assert len(d) == 5


def test_parse_numeric_cell_range_check():
    attr = AttributeSpec.numeric("x", scale=3)
    assert parse_numeric_cell(attr, " 1.5 ") == 1500
    with pytest.raises(DataError, match="64-bit"):
        parse_numeric_cell(attr, str(1 << 62))
