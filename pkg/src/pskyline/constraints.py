"""Attribute-importance constraints harvested from example tuples.

A negative constraint (lhs, rhs) forbids any p-graph in which every rhs
attribute is a child of some lhs attribute: it records one way a superior
example could be dominated, and satisfying the constraint means blocking
that way.  A positive constraint says an inferior example must be dominated
by at least one of the superior ones, stored as a disjunction of
(superior id, lhs, rhs) requirements.

Systems support reduction relative to a graph already known to satisfy them
(dropping rhs attributes the graph already covers), incremental reduction
after an edge batch, a skyline-based pruning of the generating pool, and
removal of constraints implied by stronger ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .model import AttrSet, Dataset, Schema
from .pgraph import PGraph

_VECTOR_MIN_CONSTRAINTS = 4000


class ExistenceError(ValueError):
    """No relation with the requested winnow behavior exists."""

    def __init__(self, message: str, superior_id: str | None = None,
                 dominated_by: str | None = None):
        super().__init__(message)
        self.superior_id = superior_id
        self.dominated_by = dominated_by


class NegConstraint:
    """children(lhs) must not cover rhs.  rhs shrinks under reduction."""

    __slots__ = ("lhs", "rhs", "provenance")

    def __init__(self, lhs: AttrSet, rhs: AttrSet,
                 provenance: tuple[tuple[str, str], ...] = ()):
        self.lhs = lhs
        self.rhs = rhs
        # (dominator id, superior id) pairs this constraint protects
        self.provenance = provenance

    def __repr__(self) -> str:
        return f"NegConstraint({self.lhs!r}, {self.rhs!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, NegConstraint)
            and self.lhs == other.lhs
            and self.rhs == other.rhs
        )

    def __hash__(self) -> int:
        return hash((self.lhs.bits, self.rhs.bits))


class NegSystem:
    """A conjunction of negative constraints over one schema."""

    def __init__(self, schema: Schema, constraints: Iterable[NegConstraint] = ()):
        self.schema = schema
        self.constraints: list[NegConstraint] = list(constraints)

    def __iter__(self) -> Iterator[NegConstraint]:
        return iter(self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def copy(self) -> "NegSystem":
        return NegSystem(
            self.schema,
            (NegConstraint(c.lhs, c.rhs, c.provenance) for c in self.constraints),
        )


@dataclass(frozen=True)
class PosConstraint:
    """The inferior tuple must be dominated by some listed superior.

    Each disjunct (superior id, lhs, rhs) is met when children(lhs) covers
    rhs.  An empty disjunct list marks an unsatisfiable requirement (the
    inferior tuple is value-identical to every superior).
    """

    inferior_id: str
    disjuncts: tuple[tuple[str, AttrSet, AttrSet], ...]


def build_negative(schema: Schema, pool: Dataset, superior_ids: Iterable[str]) -> NegSystem:
    """One constraint per (pool tuple, superior) pair that could dominate.

    Pairs where neither side beats the other anywhere are skipped; every
    other pair contributes, including duplicates and constraints with an
    empty rhs (those are unsatisfiable and deliberately kept so existence
    failures surface).
    """
    from .dominance import _betin_bits

    wanted = list(superior_ids)
    ranks = pool.ranks
    sup = [(g, ranks[pool.index_of(g)]) for g in wanted]
    out = NegSystem(schema)
    for o, ro in zip(pool.tuples, ranks):
        for g_id, rg in sup:
            if o.id == g_id:
                continue
            lhs = _betin_bits(ro, rg)
            rhs = _betin_bits(rg, ro)
            if not lhs and not rhs:
                continue
            out.constraints.append(
                NegConstraint(AttrSet(lhs), AttrSet(rhs), ((o.id, g_id),))
            )
    return out


def build_positive(schema: Schema, pool: Dataset, superior_ids: Iterable[str],
                   inferior_ids: Iterable[str]) -> list[PosConstraint]:
    from .dominance import bet_in

    sup = [pool.by_id(g) for g in superior_ids]
    out = []
    for w_id in inferior_ids:
        w = pool.by_id(w_id)
        disjuncts = []
        for g in sup:
            lhs = bet_in(schema, g, w)
            rhs = bet_in(schema, w, g)
            if not lhs and not rhs:
                continue  # identical values: g can never dominate w
            disjuncts.append((g.id, lhs, rhs))
        out.append(PosConstraint(w_id, tuple(disjuncts)))
    return out


def satisfies(graph: PGraph, item) -> bool:
    if isinstance(item, NegConstraint):
        return graph.children_bits(item.lhs.bits) & item.rhs.bits != item.rhs.bits
    if isinstance(item, PosConstraint):
        return any(
            graph.children_bits(lhs.bits) & rhs.bits == rhs.bits
            for _, lhs, rhs in item.disjuncts
        )
    if isinstance(item, NegSystem):
        return all(satisfies(graph, c) for c in item)
    raise TypeError(f"cannot check {type(item).__name__}")


def minimize_wrt(system: NegSystem, graph: PGraph) -> NegSystem:
    """Strip from each rhs the attributes the graph already covers.

    Only sound when the graph satisfies the system, which is checked; the
    reduced system then has the same satisfying extensions of the graph.
    """
    for c in system:
        if not satisfies(graph, c):
            raise ValueError(
                f"graph violates ({c.lhs!r} -> {c.rhs!r}); reduction would be unsound"
            )
    out = NegSystem(system.schema)
    for c in system:
        covered = graph.children_bits(c.lhs.bits)
        out.constraints.append(
            NegConstraint(c.lhs, AttrSet(c.rhs.bits & ~covered), c.provenance)
        )
    return out


def minimize(system: NegSystem, up: AttrSet, down: AttrSet) -> None:
    """Incremental reduction after adding the edge batch up x down, in place."""
    for c in system:
        if c.lhs.bits & up.bits:
            c.rhs = AttrSet(c.rhs.bits & ~down.bits)


def check_new_edges(system: NegSystem, attr: int, new_parents: AttrSet,
                    new_children: AttrSet) -> bool:
    """Whether attaching attr with these parents and children keeps the
    system satisfiable.

    Assumes the system is already reduced relative to the current graph, so
    a violation shows up in one of two local shapes: a constraint whose rhs
    is exactly {attr} and whose lhs gains a parent, or a constraint with attr
    on the lhs whose whole rhs lands among the new children.
    """
    a_bit = 1 << attr
    for c in system:
        if c.rhs.bits == a_bit and c.lhs.bits & new_parents.bits:
            return False
        if c.lhs.bits & a_bit and c.rhs.bits & ~new_children.bits == 0:
            return False
    return True


def reduce_via_skyline(schema: Schema, pool: Dataset,
                       superior_ids: Iterable[str]) -> NegSystem:
    """Build the negative system from the skyline of the pool only.

    Every p-skyline winnow is a subset of the skyline, so non-skyline tuples
    can never dominate anything and their constraints are redundant.  The
    superiors must themselves be in the skyline; otherwise no relation can
    retain them and the error names a witness.
    """
    from .dominance import find_dominator, skyline

    sky = skyline(pool)
    for g in superior_ids:
        if g not in sky:
            witness = find_dominator(pool, g)
            raise ExistenceError(
                f"tuple {g!r} is outside the skyline (dominated by {witness!r}); "
                "no relation keeps it in the winnow",
                superior_id=g,
                dominated_by=witness,
            )
    return build_negative(schema, sky, superior_ids)


def remove_redundant(system: NegSystem) -> NegSystem:
    """Drop duplicates (merging provenance) and constraints implied by a
    stronger one: tau implies tau' when lhs(tau') includes lhs(tau) and
    rhs(tau) includes rhs(tau')."""
    merged: dict[tuple[int, int], NegConstraint] = {}
    for c in system:
        key = (c.lhs.bits, c.rhs.bits)
        prev = merged.get(key)
        if prev is None:
            merged[key] = NegConstraint(c.lhs, c.rhs, c.provenance)
        else:
            prev.provenance = prev.provenance + c.provenance
    unique = list(merged.values())
    m = len(unique)
    if m >= _VECTOR_MIN_CONSTRAINTS:
        keep_flags = _filter_vector(unique)
    else:
        keep_flags = _filter_pairs(unique)
    out = NegSystem(system.schema)
    out.constraints.extend(c for c, k in zip(unique, keep_flags) if k)
    return out


def _implies(stronger: NegConstraint, weaker: NegConstraint) -> bool:
    # blocking rhs under a larger lhs is the harder requirement
    return (
        weaker.lhs.bits & ~stronger.lhs.bits == 0
        and stronger.rhs.bits & ~weaker.rhs.bits == 0
    )


def _filter_pairs(unique: list[NegConstraint]) -> list[bool]:
    keep = [True] * len(unique)
    for i, c in enumerate(unique):
        for j, d in enumerate(unique):
            if i != j and _implies(d, c):
                keep[i] = False
                break
    return keep


def _filter_vector(unique: list[NegConstraint]) -> list[bool]:
    lhs = np.array([c.lhs.bits for c in unique], dtype=np.int64)
    rhs = np.array([c.rhs.bits for c in unique], dtype=np.int64)
    m = len(unique)
    keep = np.ones(m, dtype=bool)
    block = max(1, 4_000_000 // m)
    for start in range(0, m, block):
        l_blk = lhs[start : start + block, None]
        r_blk = rhs[start : start + block, None]
        implied = ((l_blk & ~lhs[None, :]) == 0) & ((rhs[None, :] & ~r_blk) == 0)
        same = (lhs[None, :] == l_blk) & (rhs[None, :] == r_blk)
        keep[start : start + block] &= ~(implied & ~same).any(axis=1)
    return list(keep)


def system_to_json(schema: Schema, system: NegSystem) -> list[dict]:
    out = []
    for c in system:
        why = sorted({dom for dom, _ in c.provenance})
        out.append(
            {
                "lhs": list(c.lhs.names(schema)),
                "rhs": list(c.rhs.names(schema)),
                "why": why,
            }
        )
    return out
