"""p-graphs: the attribute-importance digraphs that identify p-skyline relations.

The p-graph of a relation has an edge (A, B) exactly when A is more important
than B.  Edges are stored in full transitive form (no reduction), because the
dominance test and the constraint checks are phrased directly on transitive
children sets.  A digraph is a p-graph of some p-expression if and only if it
is a strict partial order satisfying the Envelope property:

    for distinct A, B, C, D with edges (A,B), (C,D), (C,B) present,
    at least one of (C,A), (A,D), (D,B) is present.

`to_expr` inverts `from_expr` up to Pareto child order, by splitting the node
set either into mutually unrelated components (a Pareto node) or into the pair
(rest, M) where M is the set of nodes dominated by every source node (a Prior
node).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import AttrSet, Schema
from .pexpr import Leaf, Pareto, PExpr, Prior, normalize, vars_mask


class PGraphError(ValueError):
    pass


class InvalidPGraphError(PGraphError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(report.message)
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a digraph as a p-graph.

    `kind` is None when valid, otherwise one of "irreflexivity",
    "transitivity", or "envelope"; `witness` names the offending attributes in
    the order the property quantifies them.
    """

    ok: bool
    kind: str | None = None
    witness: tuple[str, ...] = ()
    message: str = "valid"


class PGraph:
    """Digraph over schema attributes; `children[i]` is a bitmask of i's edges."""

    __slots__ = ("schema", "children", "parents")

    def __init__(self, schema: Schema, children: Sequence[int], *, _checked: bool = False):
        self.schema = schema
        self.children = tuple(children)
        if len(self.children) != len(schema):
            raise PGraphError("children table length does not match schema")
        if not _checked:
            report = validate(schema, self.edges())
            if not report.ok:
                raise InvalidPGraphError(report)
        parents = [0] * len(schema)
        for a, kids in enumerate(self.children):
            bits = kids
            while bits:
                low = bits & -bits
                parents[low.bit_length() - 1] |= 1 << a
                bits ^= low
        self.parents = tuple(parents)

    @classmethod
    def from_edges(cls, schema: Schema, edges: Iterable[tuple[int, int]]) -> "PGraph":
        children = [0] * len(schema)
        for a, b in edges:
            if not (0 <= a < len(schema) and 0 <= b < len(schema)):
                raise PGraphError(f"edge ({a},{b}) outside schema")
            children[a] |= 1 << b
        return cls(schema, children)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for a, kids in enumerate(self.children):
            bits = kids
            while bits:
                low = bits & -bits
                out.append((a, low.bit_length() - 1))
                bits ^= low
        return out

    def edge_count(self) -> int:
        return sum(k.bit_count() for k in self.children)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.children[a] >> b & 1)

    def children_bits(self, bits: int) -> int:
        out = 0
        while bits:
            low = bits & -bits
            out |= self.children[low.bit_length() - 1]
            bits ^= low
        return out

    def parents_bits(self, bits: int) -> int:
        out = 0
        while bits:
            low = bits & -bits
            out |= self.parents[low.bit_length() - 1]
            bits ^= low
        return out

    def children_of(self, attrs: AttrSet) -> AttrSet:
        return AttrSet(self.children_bits(attrs.bits))

    def parents_of(self, attrs: AttrSet) -> AttrSet:
        return AttrSet(self.parents_bits(attrs.bits))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PGraph)
            and self.schema == other.schema
            and self.children == other.children
        )

    def __hash__(self) -> int:
        return hash(self.children)

    def __repr__(self) -> str:
        names = self.schema.names()
        pairs = ", ".join(f"{names[a]}>{names[b]}" for a, b in self.edges())
        return f"PGraph({pairs or 'no edges'})"


def validate(schema: Schema, edges: Iterable[tuple[int, int]]) -> ValidationReport:
    """Check irreflexivity, transitivity, and Envelope on an arbitrary digraph.

    Returns a report rather than raising; the first violation found (scanning
    attributes in index order) is named.
    """
    n = len(schema)
    names = schema.names()
    children = [0] * n
    for a, b in edges:
        children[a] |= 1 << b

    for a in range(n):
        if children[a] >> a & 1:
            return ValidationReport(
                False, "irreflexivity", (names[a],), f"self-loop on {names[a]}"
            )

    for a in range(n):
        closure = 0
        bits = children[a]
        while bits:
            low = bits & -bits
            closure |= children[low.bit_length() - 1]
            bits ^= low
        missing = closure & ~children[a]
        if missing:
            # name a concrete broken triple (a, b, c)
            for b in _bits_iter(children[a]):
                gap = children[b] & ~children[a]
                if gap:
                    c = (gap & -gap).bit_length() - 1
                    return ValidationReport(
                        False,
                        "transitivity",
                        (names[a], names[b], names[c]),
                        f"edges ({names[a]},{names[b]}) and ({names[b]},{names[c]}) "
                        f"without ({names[a]},{names[c]})",
                    )

    parents = [0] * n
    for a in range(n):
        for b in _bits_iter(children[a]):
            parents[b] |= 1 << a

    for a in range(n):
        for b in _bits_iter(children[a]):
            for c in _bits_iter(parents[b] & ~(1 << a)):
                if children[c] >> a & 1:
                    continue  # (C,A) present, instance satisfied for every D
                bad = children[c] & ~children[a] & ~parents[b] & ~(1 << a) & ~(1 << b)
                if bad:
                    d = (bad & -bad).bit_length() - 1
                    return ValidationReport(
                        False,
                        "envelope",
                        (names[a], names[b], names[c], names[d]),
                        f"edges ({names[a]},{names[b]}), ({names[c]},{names[d]}), "
                        f"({names[c]},{names[b]}) present but none of "
                        f"({names[c]},{names[a]}), ({names[a]},{names[d]}), "
                        f"({names[d]},{names[b]})",
                    )
    return ValidationReport(True)


def _bits_iter(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


# --- expression <-> graph -------------------------------------------------

def from_expr(schema: Schema, e: PExpr) -> PGraph:
    """Build the p-graph: Prior composition adds Var(left) x Var(right) edges,
    Pareto composition only unions child edges."""
    children = [0] * len(schema)

    def walk(node: PExpr) -> int:
        if isinstance(node, Leaf):
            return 1 << node.attr
        masks = [walk(c) for c in node.children]
        if isinstance(node, Prior):
            for i in range(len(masks)):
                later = 0
                for j in range(i + 1, len(masks)):
                    later |= masks[j]
                for a in _bits_iter(masks[i]):
                    children[a] |= later
        acc = 0
        for m in masks:
            acc |= m
        return acc

    walk(e)
    return PGraph(schema, children, _checked=True)


def to_expr(g: PGraph) -> PExpr:
    """Reconstruct a normalized expression whose p-graph equals `g`.

    Pareto children are ordered ascending by their smallest attribute index,
    which makes the output deterministic despite Pareto commutativity.
    """

    def undirected_components(node_bits: int) -> list[int]:
        comps = []
        remaining = node_bits
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for a in _bits_iter(frontier):
                    nxt |= (g.children[a] | g.parents[a]) & node_bits
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            remaining &= ~comp
        return sorted(comps, key=lambda c: (c & -c).bit_length())

    def build(node_bits: int) -> PExpr:
        if node_bits & (node_bits - 1) == 0:
            return Leaf(node_bits.bit_length() - 1)
        comps = undirected_components(node_bits)
        if len(comps) > 1:
            return Pareto(tuple(build(c) for c in comps))
        # connected: split off M, the nodes below every source of the subgraph
        sources = [a for a in _bits_iter(node_bits) if g.parents[a] & node_bits == 0]
        m = node_bits
        for s in sources:
            m &= g.children[s]
        if not m or m == node_bits:
            raise PGraphError(
                "no prioritized split found; the graph is not a valid p-graph"
            )
        return Prior((build(node_bits & ~m), build(m)))

    all_bits = (1 << len(g.schema)) - 1
    return normalize(build(all_bits))


def equals(g1: PGraph, g2: PGraph) -> bool:
    _require_same_schema(g1, g2)
    return g1.children == g2.children


def contains(g1: PGraph, g2: PGraph) -> bool:
    """True when g2's relation strictly extends g1's: every edge of g1 is in
    g2 and g2 has at least one more."""
    _require_same_schema(g1, g2)
    superset = all(c1 & ~c2 == 0 for c1, c2 in zip(g1.children, g2.children))
    return superset and g1.children != g2.children


def _require_same_schema(g1: PGraph, g2: PGraph) -> None:
    if g1.schema != g2.schema:
        raise PGraphError("p-graphs are over different schemas")


# --- generalized envelope over node sets ------------------------------------

def general_envelope_holds(
    g: PGraph, a: AttrSet, b: AttrSet, c: AttrSet, d: AttrSet
) -> bool:
    """Evaluate the Envelope implication lifted to disjoint node sets.

    Each set must be a singleton or induce a disconnected subgraph (a union of
    at least two unrelated parts); an edge between sets means every cross pair
    is an edge.
    """
    sets = (a, b, c, d)
    for i, s in enumerate(sets):
        if not s:
            raise PGraphError("node sets must be non-empty")
        for t in sets[i + 1 :]:
            if not s.isdisjoint(t):
                raise PGraphError("node sets must be pairwise disjoint")
        if len(s) > 1 and _component_count(g, s.bits) < 2:
            raise PGraphError(
                "multi-node sets must induce at least two unrelated parts"
            )

    def edge_all(x: AttrSet, y: AttrSet) -> bool:
        return all(g.children[i] & y.bits == y.bits for i in x)

    antecedent = edge_all(a, b) and edge_all(c, d) and edge_all(c, b)
    if not antecedent:
        return True
    return edge_all(c, a) or edge_all(a, d) or edge_all(d, b)


def _component_count(g: PGraph, node_bits: int) -> int:
    count = 0
    remaining = node_bits
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for x in _bits_iter(frontier):
                nxt |= (g.children[x] | g.parents[x]) & node_bits
            frontier = nxt & ~comp
            comp |= frontier
        count += 1
        remaining &= ~comp
    return count


# --- serialization ----------------------------------------------------------

def graph_to_json(g: PGraph) -> dict:
    names = g.schema.names()
    return {
        "nodes": names,
        "edges": [[names[a], names[b]] for a, b in g.edges()],
    }


def graph_from_json(schema: Schema, doc: dict) -> PGraph:
    edges = [(schema.index(u), schema.index(v)) for u, v in doc.get("edges", [])]
    return PGraph.from_edges(schema, edges)


def graph_to_dot(g: PGraph) -> str:
    lines = ["digraph pgraph {"]
    for name in g.schema.names():
        lines.append(f'  "{name}";')
    names = g.schema.names()
    for a, b in g.edges():
        lines.append(f'  "{names[a]}" -> "{names[b]}";')
    lines.append("}")
    return "\n".join(lines)
