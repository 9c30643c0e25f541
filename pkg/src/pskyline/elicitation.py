"""Eliciting a maximal preference relation from superior/inferior examples.

The incremental procedure starts from the plain skyline relation and pushes
attributes downward one at a time, in a caller-chosen order.  A push merges
the attribute with an already-processed neighbor under the same Pareto node
using one of the minimal-extension rewrites, but only when the negative
constraint system allows the edges the rewrite would add.  Pushing until no
rule applies, for every attribute, yields a relation that is maximal among
those favoring the superior examples.

The brute-force routines enumerate every full p-skyline relation over a
small schema and filter by winnow behavior.  They are oracles for tests and
the only route that can also honor inferior examples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .constraints import (
    ExistenceError,
    NegSystem,
    build_negative,
    check_new_edges,
    minimize,
    remove_redundant,
)
from .dominance import PSkylineRelation, dominates, find_dominator, skyline, winnow
from .extension import RuleApplication, apply_rule
from .model import AttrSet, Dataset, Schema
from .pexpr import Leaf, Pareto, PExpr, Prior, skyline_expr, to_text, vars_mask
from .pgraph import PGraph, contains, validate


@dataclass(frozen=True)
class ElicitConfig:
    """Knobs for the push procedure.

    The defaults follow the written procedure: prefer promoting over
    demoting when both rewrites fit, prefer putting the existing leaf on
    top in the two-leaf case, and scan merge partners left to right.
    Maximality of the result holds for every setting; the settings only
    steer which maximal relation comes out.
    """

    attr_order: tuple[str, ...] | None = None
    flip_rule12: bool = False
    flip_rule3: bool = False
    reverse_scan: bool = False
    use_skyline_reduction: bool = True
    use_redundancy_removal: bool = True


@dataclass(frozen=True)
class PushEvent:
    """One applied rewrite, for traces and explanations."""

    attr: str
    rule: int
    against: str
    added_edges: tuple[tuple[str, str], ...]
    expression: str


def _leaf_path(tree: PExpr, attr: int) -> tuple[int, ...]:
    if isinstance(tree, Leaf):
        if tree.attr == attr:
            return ()
        raise ValueError(f"attribute {attr} not in tree")
    for k, child in enumerate(tree.children):
        if vars_mask(child) >> attr & 1:
            return (k,) + _leaf_path(child, attr)
    raise ValueError(f"attribute {attr} not in tree")


def push(
    schema: Schema,
    tree: PExpr,
    system: NegSystem,
    attr: int,
    processed: AttrSet,
    config: ElicitConfig = ElicitConfig(),
) -> tuple[PExpr, PushEvent] | None:
    """Try to push `attr` one step down; None when no rewrite is allowed.

    On success the system is reduced in place by the added edges and the
    new normalized tree is returned, so repeated calls walk the attribute
    as deep as the constraints let it go.
    """
    path = _leaf_path(tree, attr)
    if not path:
        return None
    parent = tree
    for k in path[:-1]:
        parent = parent.children[k]

    a_bit = 1 << attr

    def attempt(rule: int, site: tuple[int, ...], i: int, j: int,
                up: int, down: int, partner: PExpr) -> tuple[PExpr, PushEvent]:
        new_tree = apply_rule(tree, RuleApplication(rule, site, i, j))
        minimize(system, AttrSet(up), AttrSet(down))
        edges = tuple(
            (schema.attributes[a].name, schema.attributes[b].name)
            for a in _bits(up)
            for b in _bits(down)
        )
        event = PushEvent(
            attr=schema.attributes[attr].name,
            rule=rule,
            against=to_text(schema, partner),
            added_edges=edges,
            expression=to_text(schema, new_tree),
        )
        return new_tree, event

    if isinstance(parent, Prior):
        if len(path) < 2:
            return None  # root is a prioritized chain; nowhere left to go
        site = path[:-2]
        grand = tree
        for k in site:
            grand = grand.children[k]
        if not isinstance(grand, Pareto):
            return None
        ci_index = path[-2]
        pos = path[-1]
        partners = [
            (j, cj)
            for j, cj in enumerate(grand.children)
            if j != ci_index and vars_mask(cj) & ~processed.bits == 0
        ]
        if config.reverse_scan:
            partners.reverse()
        first = pos == 0
        last = pos == len(parent.children) - 1
        branches = [1, 2] if not config.flip_rule12 else [2, 1]
        for rule in branches:
            if rule == 1 and first:
                for j, cj in partners:
                    cj_mask = vars_mask(cj)
                    if check_new_edges(system, attr, AttrSet(0), AttrSet(cj_mask)):
                        return attempt(1, site, ci_index, j, a_bit, cj_mask, cj)
            if rule == 2 and last:
                for j, cj in partners:
                    cj_mask = vars_mask(cj)
                    if check_new_edges(system, attr, AttrSet(cj_mask), AttrSet(0)):
                        return attempt(2, site, ci_index, j, cj_mask, a_bit, cj)
        return None

    # parent is the Pareto node the leaf hangs off directly
    site = path[:-1]
    a_index = path[-1]
    partners = [
        (k, ck)
        for k, ck in enumerate(parent.children)
        if k != a_index and vars_mask(ck) & ~processed.bits == 0
    ]
    if config.reverse_scan:
        partners.reverse()
    for k, ck in partners:
        if isinstance(ck, Prior):
            head_mask = vars_mask(ck.children[0])
            tail_mask = vars_mask(ck.children[-1])
            tries = (
                [("head", head_mask), ("tail", tail_mask)]
                if not config.flip_rule12
                else [("tail", tail_mask), ("head", head_mask)]
            )
            for kind, mask in tries:
                if kind == "head":
                    if check_new_edges(system, attr, AttrSet(mask), AttrSet(0)):
                        return attempt(1, site, k, a_index, mask, a_bit, ck)
                else:
                    if check_new_edges(system, attr, AttrSet(0), AttrSet(mask)):
                        return attempt(2, site, k, a_index, a_bit, mask, ck)
        else:
            b_bit = vars_mask(ck)
            directions = ["above", "below"] if not config.flip_rule3 else ["below", "above"]
            for d in directions:
                if d == "above":
                    if check_new_edges(system, attr, AttrSet(b_bit), AttrSet(0)):
                        return attempt(3, site, k, a_index, b_bit, a_bit, ck)
                else:
                    if check_new_edges(system, attr, AttrSet(0), AttrSet(b_bit)):
                        return attempt(3, site, a_index, k, a_bit, b_bit, ck)
    return None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _resolve_order(schema: Schema, names: tuple[str, ...] | None) -> list[int]:
    if names is None:
        return list(range(len(schema)))
    order = [schema.index(n) for n in names]
    if sorted(order) != list(range(len(schema))):
        raise ValueError("attribute order must name every attribute exactly once")
    return order


def exists_favoring(pool: Dataset, superior_ids: Iterable[str]) -> bool:
    """Whether any relation keeps all the given tuples in its winnow.

    Equivalent to skyline membership of every tuple, since the skyline
    relation has the largest winnow of all and every winnow sits inside it.
    """
    return all(find_dominator(pool, g) is None for g in superior_ids)


def elicit(
    pool: Dataset,
    superior_ids: Iterable[str],
    config: ElicitConfig | None = None,
    trace: list[PushEvent] | None = None,
) -> PSkylineRelation:
    """Build a maximal relation whose winnow of `pool` keeps every superior."""
    config = config or ElicitConfig()
    schema = pool.schema
    wanted = list(superior_ids)
    sky = skyline(pool)
    for g in wanted:
        if g not in sky:
            dom = find_dominator(pool, g)
            raise ExistenceError(
                f"tuple {g!r} is outside the skyline (dominated by {dom!r}); "
                "no relation keeps it in the winnow",
                superior_id=g,
                dominated_by=dom,
            )
    source = sky if config.use_skyline_reduction else pool
    system = build_negative(schema, source, wanted)
    if config.use_redundancy_removal:
        system = remove_redundant(system)

    order = _resolve_order(schema, config.attr_order)
    tree = skyline_expr(schema)
    if len(schema) == 1:
        return PSkylineRelation.from_expr(schema, tree)

    processed = 1 << order[0]
    budget = len(schema) * (len(schema) - 1) // 2
    for a in order[1:]:
        while True:
            result = push(schema, tree, system, a, AttrSet(processed), config)
            if result is None:
                break
            tree, event = result
            if trace is not None:
                trace.append(event)
            budget -= 1
            if budget < 0:
                raise RuntimeError("push applied more rewrites than edges exist")
        processed |= 1 << a
    return PSkylineRelation.from_expr(schema, tree)


def enumerate_all_pskylines(schema: Schema) -> Iterator[PSkylineRelation]:
    """Every full p-skyline relation over the schema, smallest graphs first.

    Edge sets are tried in lexicographic order within each size, so the
    enumeration order is deterministic.  Exponential in the edge universe:
    keep the schema small.
    """
    n = len(schema)
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for size in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, size):
            if not validate(schema, combo).ok:
                continue
            children = [0] * n
            for a, b in combo:
                children[a] |= 1 << b
            yield PSkylineRelation.from_graph(PGraph(schema, children, _checked=True))


_BRUTE_FORCE_LIMIT = 5


def _check_width(schema: Schema, limit: int) -> None:
    if len(schema) > limit:
        raise ValueError(
            f"brute force search is capped at {limit} attributes; "
            f"schema has {len(schema)}"
        )


def _favors_and_disfavors(
    rel: PSkylineRelation, pool: Dataset, sup: list[str], inf: list[str]
) -> bool:
    kept = {t.id for t in winnow(rel, pool).tuples}
    if not all(g in kept for g in sup):
        return False
    sup_tuples = [pool.by_id(g) for g in sup]
    return all(
        any(dominates(rel, g, pool.by_id(w)) for g in sup_tuples) for w in inf
    )


def _split_examples(
    pool: Dataset, superior_ids: Iterable[str], inferior_ids: Iterable[str]
) -> tuple[list[str], list[str]]:
    sup = list(dict.fromkeys(superior_ids))
    inf = list(dict.fromkeys(inferior_ids))
    clash = sorted(set(sup) & set(inf))
    if clash:
        raise ValueError(f"tuples marked both superior and inferior: {clash}")
    for t_id in sup + inf:
        pool.by_id(t_id)  # raises on unknown ids
    return sup, inf


def brute_force_df(
    pool: Dataset,
    superior_ids: Iterable[str],
    inferior_ids: Iterable[str],
    limit: int = _BRUTE_FORCE_LIMIT,
) -> PSkylineRelation | None:
    """First relation (in enumeration order) favoring every superior and
    disfavoring every inferior, or None when no relation does both.

    Favoring keeps the tuple in the winnow of the pool; disfavoring means
    some superior tuple dominates it.
    """
    schema = pool.schema
    _check_width(schema, limit)
    sup, inf = _split_examples(pool, superior_ids, inferior_ids)
    for rel in enumerate_all_pskylines(schema):
        if _favors_and_disfavors(rel, pool, sup, inf):
            return rel
    return None


def brute_force_opt_fdf(
    pool: Dataset,
    superior_ids: Iterable[str],
    inferior_ids: Iterable[str],
    limit: int = _BRUTE_FORCE_LIMIT,
) -> list[PSkylineRelation]:
    """All maximal favoring/disfavoring relations, in enumeration order."""
    schema = pool.schema
    _check_width(schema, limit)
    sup, inf = _split_examples(pool, superior_ids, inferior_ids)
    hits: list[PSkylineRelation] = []
    for rel in enumerate_all_pskylines(schema):
        if _favors_and_disfavors(rel, pool, sup, inf):
            hits.append(rel)
    return [
        r
        for r in hits
        if not any(contains(r.graph, o.graph) for o in hits)
    ]
