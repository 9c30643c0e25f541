"""Expression syntax: parsing, rendering, normalization, JSON."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pskyline import (
    Leaf,
    Pareto,
    ParseError,
    Prior,
    expr_from_json,
    expr_to_json,
    normalize,
    parse,
    skyline_expr,
    to_text,
    vars_of,
)
from pskyline.pexpr import ExprError, check_expr, is_full, is_normalized, iter_leaves

from conftest import numeric_schema

S3 = numeric_schema(3)
S7 = numeric_schema(7)


def test_prioritized_binds_tighter_than_pareto():
    e = parse(S3, "A1 & A2 * A3")
    assert e == Pareto((Prior((Leaf(0), Leaf(1))), Leaf(2)))


def test_parentheses_override_precedence():
    e = parse(S3, "A1 & (A2 * A3)")
    assert e == Prior((Leaf(0), Pareto((Leaf(1), Leaf(2)))))


def test_operators_are_left_associative_then_flattened():
    e = parse(S3, "A1 & A2 & A3")
    assert e == Prior((Leaf(0), Leaf(1), Leaf(2)))


@pytest.mark.parametrize(
    "text",
    ["", "A1 &", "& A1", "A1 A2", "(A1 * A2", "A1 * A2)", "A9", "A1 % A2", "()"],
)
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse(S3, text)


def test_parse_rejects_duplicate_attribute():
    with pytest.raises(ParseError, match="once"):
        parse(S3, "A1 & A2 * A1")


def test_seven_attribute_expression_round_trip():
    text = "A1 & A2 * (A3 * A5) & (A4 * A6 & A7)"
    e = parse(S7, text)
    assert to_text(S7, e) == text
    assert vars_of(e) == S7.all_attrs()
    assert is_full(S7, e)


def test_to_text_adds_parens_only_where_needed():
    e = Prior((Leaf(0), Pareto((Leaf(1), Leaf(2)))))
    assert to_text(S3, e) == "A1 & (A2 * A3)"
    e2 = Pareto((Prior((Leaf(0), Leaf(1))), Leaf(2)))
    assert to_text(S3, e2) == "A1 & A2 * A3"


def test_normalize_flattens_same_kind_nesting():
    nested = Prior((Leaf(0), Prior((Leaf(1), Leaf(2)))))
    assert normalize(nested) == Prior((Leaf(0), Leaf(1), Leaf(2)))
    assert is_normalized(normalize(nested))
    assert not is_normalized(nested)


def test_normalize_drops_single_child_wrappers():
    assert normalize(Pareto((Prior((Leaf(1),)),))) == Leaf(1)


def test_skyline_expr_is_flat_pareto():
    assert skyline_expr(S3) == Pareto((Leaf(0), Leaf(1), Leaf(2)))
    assert skyline_expr(numeric_schema(1)) == Leaf(0)


def test_check_expr_rejects_foreign_and_repeated_leaves():
    with pytest.raises(ExprError):
        check_expr(S3, Leaf(5))
    with pytest.raises(ExprError):
        check_expr(S3, Pareto((Leaf(0), Leaf(0))))


def test_iter_leaves_in_reading_order():
    e = parse(S3, "A2 & (A1 * A3)")
    assert [l.attr for l in iter_leaves(e)] == [1, 0, 2]


def test_expr_json_round_trip():
    e = parse(S7, "A1 & A2 * (A3 * A5) & (A4 * A6 & A7)")
    doc = expr_to_json(S7, e)
    assert doc["op"] == "pareto"
    assert expr_from_json(S7, doc) == e


def test_expr_from_json_rejects_unknown_node():
    with pytest.raises(ExprError):
        expr_from_json(S3, {"op": "xor", "children": []})


# --- property tests --------------------------------------------------------

@st.composite
def random_expr(draw, n=4):
    attrs = list(draw(st.permutations(range(n))))

    def build(part):
        if len(part) == 1:
            return Leaf(part[0])
        k = draw(st.integers(2, len(part)))
        cut_set = draw(
            st.sets(st.integers(1, len(part) - 1), min_size=k - 1, max_size=k - 1)
        )
        bounds = [0] + sorted(cut_set) + [len(part)]
        blocks = [part[a:b] for a, b in zip(bounds, bounds[1:])]
        op = draw(st.sampled_from([Prior, Pareto]))
        return op(tuple(build(b) for b in blocks))

    return build(attrs)


@given(random_expr())
def test_normalize_is_idempotent(e):
    once = normalize(e)
    assert normalize(once) == once
    assert is_normalized(once)


@given(random_expr())
def test_parse_inverts_to_text(e):
    """Rendering keeps explicit nesting, so the round trip is exact."""
    s = numeric_schema(4)
    assert parse(s, to_text(s, e)) == e


@given(random_expr())
def test_vars_survive_normalization(e):
    assert vars_of(normalize(e)) == vars_of(e)
