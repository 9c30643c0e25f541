"""Tuple dominance, winnow evaluation, and skyline computation.

Dominance is decided on the p-graph: o1 dominates o2 when the attributes where
o1 wins are important enough to cover every attribute where o2 wins, i.e.
children(BetIn(o1,o2)) contains BetIn(o2,o1) and the tuples differ somewhere.
Two independent routes compute the same relation and serve as oracles:

* `dominates_semantic` recurses over the syntax tree with the textbook
  clauses for prioritized and Pareto accumulation;
* `dominates_decomposition` rebuilds the relation on a small finite universe
  as the transitive closure of single-attribute improvement steps that hold
  everything outside the improved attribute's children fixed.

Winnow is a pairwise O(n^2) scan with an early exit; datasets past a size
threshold take a vectorized path that computes the same answer with numpy
bitmask matrices.  Skyline is the special case with an empty p-graph and gets
a block-nested-loop fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .model import AttrSet, Dataset, Schema, Tuple
from .pexpr import (
    Leaf,
    Pareto,
    PExpr,
    Prior,
    check_expr,
    is_full,
    normalize,
    parse,
    to_text,
    vars_mask,
)
from .pgraph import PGraph, from_expr, to_expr

# datasets at least this large (and at most this wide) use the numpy path
VECTOR_MIN_ROWS = 300
VECTOR_MAX_DIMS = 20


@dataclass(frozen=True)
class PSkylineRelation:
    """A full preference relation: normalized tree plus its p-graph."""

    schema: Schema
    tree: PExpr
    graph: PGraph

    @classmethod
    def from_expr(cls, schema: Schema, expr: PExpr | str) -> "PSkylineRelation":
        if isinstance(expr, str):
            expr = parse(schema, expr)
        check_expr(schema, expr)
        tree = normalize(expr)
        if not is_full(schema, tree):
            missing = [
                schema.attributes[i].name
                for i in range(len(schema))
                if not vars_mask(tree) >> i & 1
            ]
            raise ValueError(f"expression must use every attribute; missing {missing}")
        return cls(schema, tree, from_expr(schema, tree))

    @classmethod
    def from_graph(cls, graph: PGraph) -> "PSkylineRelation":
        return cls(graph.schema, to_expr(graph), graph)

    def expression(self) -> str:
        return to_text(self.schema, self.tree)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PSkylineRelation) and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.graph)


def sky_relation(schema: Schema) -> PSkylineRelation:
    from .pexpr import skyline_expr

    return PSkylineRelation.from_expr(schema, skyline_expr(schema))


# --- attribute-set views of a tuple pair -----------------------------------

def _ranks(schema: Schema, t: Tuple) -> tuple[int, ...]:
    from .model import rank_value

    return tuple(rank_value(a, v) for a, v in zip(schema.attributes, t.values))


def _betin_bits(r1: Iterable[int], r2: Iterable[int]) -> int:
    bits = 0
    for i, (a, b) in enumerate(zip(r1, r2)):
        if a > b:
            bits |= 1 << i
    return bits


def bet_in(schema: Schema, o1: Tuple, o2: Tuple) -> AttrSet:
    """Attributes where o1 is strictly better than o2."""
    return AttrSet(_betin_bits(_ranks(schema, o1), _ranks(schema, o2)))


def diff(schema: Schema, o1: Tuple, o2: Tuple) -> AttrSet:
    r1, r2 = _ranks(schema, o1), _ranks(schema, o2)
    return AttrSet(_betin_bits(r1, r2) | _betin_bits(r2, r1))


def top(rel: PSkylineRelation, o1: Tuple, o2: Tuple) -> AttrSet:
    """Members of Diff(o1,o2) with no differing attribute above them."""
    d = diff(rel.schema, o1, o2).bits
    out = 0
    for i in _iter_bits(d):
        if rel.graph.parents[i] & d == 0:
            out |= 1 << i
    return AttrSet(out)


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


# --- the three dominance routes ---------------------------------------------

def dominates(rel: PSkylineRelation, o1: Tuple, o2: Tuple) -> bool:
    """Graph-based test: children(BetIn(o1,o2)) covers BetIn(o2,o1)."""
    r1 = _ranks(rel.schema, o1)
    r2 = _ranks(rel.schema, o2)
    b12 = _betin_bits(r1, r2)
    b21 = _betin_bits(r2, r1)
    if b12 | b21 == 0:
        return False  # value-identical tuples never dominate each other
    return rel.graph.children_bits(b12) & b21 == b21


def dominates_semantic(rel: PSkylineRelation, o1: Tuple, o2: Tuple) -> bool:
    """Oracle: structural recursion over the syntax tree."""
    r1 = _ranks(rel.schema, o1)
    r2 = _ranks(rel.schema, o2)

    def equiv(mask: int) -> bool:
        return all(r1[i] == r2[i] for i in _iter_bits(mask))

    def better(node: PExpr) -> bool:
        if isinstance(node, Leaf):
            return r1[node.attr] > r2[node.attr]
        if isinstance(node, Prior):
            head, tail = node.children[0], node.children[1:]
            rest: PExpr = tail[0] if len(tail) == 1 else Prior(tail)
            return better(head) or (equiv(vars_mask(head)) and better(rest))
        head, tail = node.children[0], node.children[1:]
        rest = tail[0] if len(tail) == 1 else Pareto(tail)
        h, t = better(head), better(rest)
        return (
            (h and equiv(vars_mask(rest)))
            or (t and equiv(vars_mask(head)))
            or (h and t)
        )

    return better(rel.tree)


def dominates_decomposition(
    rel: PSkylineRelation, o1: Tuple, o2: Tuple, universe: Dataset
) -> bool:
    """Oracle for small finite universes: reachability through one-attribute
    improvement steps.

    A step from u to v along attribute A requires u.A better than v.A and
    equality on every attribute outside A and A's children.  Dominance is the
    transitive closure of the union of these steps, which only works out when
    `universe` contains the full grid of intermediate tuples.
    """
    start = universe.index_of(o1.id)
    goal = universe.index_of(o2.id)
    if start == goal:
        return False
    ranks = np.asarray(universe.ranks, dtype=np.int64)
    n, d = ranks.shape
    step = np.zeros((n, n), dtype=bool)
    all_mask = (1 << d) - 1
    for a in range(d):
        fixed = all_mask & ~(rel.graph.children[a] | (1 << a))
        better = ranks[:, a, None] > ranks[None, :, a]
        held = list(_iter_bits(fixed))
        if held:
            eq = (ranks[:, None, held] == ranks[None, :, held]).all(axis=2)
            step |= better & eq
        else:
            step |= better

    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = step[frontier].any(axis=0) & ~seen
        if nxt[goal]:
            return True
        seen |= nxt
        frontier = nxt
    return False


def pareto_dominates(schema: Schema, o1: Tuple, o2: Tuple) -> bool:
    """Skyline dominance: better-or-equal everywhere, strictly better somewhere."""
    r1 = _ranks(schema, o1)
    r2 = _ranks(schema, o2)
    b21 = _betin_bits(r2, r1)
    if b21:
        return False
    return _betin_bits(r1, r2) != 0


# --- winnow and skyline ------------------------------------------------------

def winnow(rel: PSkylineRelation, data: Dataset) -> Dataset:
    """Tuples of `data` not dominated by any other tuple, in input order.

    Value-identical duplicates never dominate each other, so they survive or
    fall together.
    """
    if data.schema != rel.schema:
        raise ValueError("dataset schema does not match the relation's schema")
    n = len(data)
    if n == 0:
        return Dataset(data.schema, ())
    if n >= VECTOR_MIN_ROWS and len(data.schema) <= VECTOR_MAX_DIMS:
        keep = _winnow_vector(rel.graph.children, data)
    else:
        keep = _winnow_pairs(rel.graph, data)
    return Dataset(data.schema, (t for t, k in zip(data.tuples, keep) if k))


def _winnow_pairs(graph: PGraph, data: Dataset) -> list[bool]:
    ranks = data.ranks
    n = len(data)
    keep = [True] * n
    for j in range(n):
        rj = ranks[j]
        for i in range(n):
            if i == j:
                continue
            ri = ranks[i]
            b12 = _betin_bits(ri, rj)
            b21 = _betin_bits(rj, ri)
            if b12 | b21 == 0:
                continue
            if graph.children_bits(b12) & b21 == b21:
                keep[j] = False
                break
    return keep


def _winnow_vector(children: tuple[int, ...], data: Dataset) -> list[bool]:
    d = len(data.schema)
    ranks = np.asarray(data.ranks, dtype=np.int64)
    n = ranks.shape[0]
    # children(S) for every attribute subset S, built by peeling the low bit
    table = np.zeros(1 << d, dtype=np.int64)
    for s in range(1, 1 << d):
        low = s & -s
        table[s] = table[s ^ low] | children[low.bit_length() - 1]

    dominated = np.zeros(n, dtype=bool)
    block = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, block):
        rows = ranks[start : start + block]  # (b, d)
        b_ij = np.zeros((rows.shape[0], n), dtype=np.int64)  # row beats col
        b_ji = np.zeros((rows.shape[0], n), dtype=np.int64)  # col beats row
        for a in range(d):
            gt = rows[:, a, None] > ranks[None, :, a]
            lt = rows[:, a, None] < ranks[None, :, a]
            b_ij |= gt.astype(np.int64) << a
            b_ji |= lt.astype(np.int64) << a
        cover = np.take(table, b_ij)
        dom = ((cover & b_ji) == b_ji) & ((b_ij | b_ji) != 0)
        dominated |= dom.any(axis=0)
    return [not x for x in dominated]


def skyline(data: Dataset) -> Dataset:
    """Pareto-undominated tuples in input order (block-nested-loop window)."""
    n = len(data)
    if n == 0:
        return Dataset(data.schema, ())
    if n >= VECTOR_MIN_ROWS and len(data.schema) <= VECTOR_MAX_DIMS:
        keep = _winnow_vector((0,) * len(data.schema), data)
        return Dataset(data.schema, (t for t, k in zip(data.tuples, keep) if k))

    ranks = data.ranks
    window: list[int] = []
    for j in range(n):
        rj = ranks[j]
        dominated = False
        survivors = []
        for i in window:
            ri = ranks[i]
            b_ij = _betin_bits(ri, rj)
            b_ji = _betin_bits(rj, ri)
            if b_ji == 0 and b_ij != 0:
                dominated = True
                break
            if not (b_ij == 0 and b_ji != 0):
                survivors.append(i)
        if dominated:
            continue  # window unchanged
        survivors.append(j)
        window = survivors
    keep = set(window)
    return Dataset(data.schema, (t for idx, t in enumerate(data.tuples) if idx in keep))


def find_dominator(
    data: Dataset, target_id: str, rel: PSkylineRelation | None = None
) -> str | None:
    """First tuple (in dataset order) dominating `target_id`, or None.

    With no relation given, Pareto dominance is used, which answers skyline
    membership questions.
    """
    ranks = data.ranks
    j = data.index_of(target_id)
    rj = ranks[j]
    for i, t in enumerate(data.tuples):
        if i == j:
            continue
        ri = ranks[i]
        b_ij = _betin_bits(ri, rj)
        b_ji = _betin_bits(rj, ri)
        if rel is None:
            if b_ji == 0 and b_ij != 0:
                return t.id
        elif b_ij | b_ji and rel.graph.children_bits(b_ij) & b_ji == b_ji:
            return t.id
    return None
