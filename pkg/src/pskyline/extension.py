"""Minimal extensions of a p-skyline relation via tree rewrites.

Each rewrite picks two children C_i, C_j of the same Pareto node and splices
them into a prioritized arrangement, adding a specific bipartite set of edges
to the p-graph.  Four shapes cover all cases:

* rule 1: C_i is a prioritized list [N_1 .. N_m]; its head N_1 is promoted
  above C_j, which joins the remainder in a Pareto node.
* rule 2: mirror image, the tail N_m is demoted below C_j.
* rule 3: C_i and C_j are both leaves; they become the chain C_i & C_j.
* rule 4: both are prioritized lists; each is cut in two and the four parts
  are recombined so the front of one sits above the back of the other.

Applying any single rewrite yields a minimal proper extension, and every
minimal proper extension arises this way, so enumerating rewrite results and
deduplicating by p-graph enumerates the minimal extensions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Schema
from .pexpr import Leaf, Pareto, PExpr, Prior, normalize, vars_mask
from .pgraph import PGraph, from_expr


@dataclass(frozen=True)
class RuleApplication:
    """One rewrite site: which rule, where, and how the lists are cut.

    `path` addresses the Pareto node by child indices from the root; `i` and
    `j` are positions of C_i and C_j under it.  `s` and `t` are the cut
    points for rule 4 (1 <= s < len(C_i), 1 <= t < len(C_j)) and None
    otherwise.
    """

    rule: int
    path: tuple[int, ...]
    i: int
    j: int
    s: int | None = None
    t: int | None = None


class RuleError(ValueError):
    """The tree at the given site does not have the shape the rule needs."""


def subtree_at(tree: PExpr, path: tuple[int, ...]) -> PExpr:
    node = tree
    for k in path:
        if isinstance(node, Leaf):
            raise RuleError(f"path {path} walks through a leaf")
        node = node.children[k]
    return node


def _replace_at(tree: PExpr, path: tuple[int, ...], new: PExpr) -> PExpr:
    if not path:
        return new
    if isinstance(tree, Leaf):
        raise RuleError(f"path walks through a leaf")
    k = path[0]
    children = list(tree.children)
    children[k] = _replace_at(children[k], path[1:], new)
    return type(tree)(tuple(children))


def _prior(parts: list[PExpr]) -> PExpr:
    return parts[0] if len(parts) == 1 else Prior(tuple(parts))


def _pareto(parts: list[PExpr]) -> PExpr:
    return parts[0] if len(parts) == 1 else Pareto(tuple(parts))


def _rewrite(node: Pareto, app: RuleApplication) -> PExpr:
    ci = node.children[app.i]
    cj = node.children[app.j]
    if app.rule == 1:
        if not isinstance(ci, Prior):
            raise RuleError("rule 1 needs a prioritized C_i")
        head, rest = ci.children[0], list(ci.children[1:])
        merged = _prior([head, _pareto([cj, _prior(rest)])])
    elif app.rule == 2:
        if not isinstance(ci, Prior):
            raise RuleError("rule 2 needs a prioritized C_i")
        rest, tail = list(ci.children[:-1]), ci.children[-1]
        merged = _prior([_pareto([cj, _prior(rest)]), tail])
    elif app.rule == 3:
        if not (isinstance(ci, Leaf) and isinstance(cj, Leaf)):
            raise RuleError("rule 3 needs two leaves")
        merged = Prior((ci, cj))
    elif app.rule == 4:
        if not (isinstance(ci, Prior) and isinstance(cj, Prior)):
            raise RuleError("rule 4 needs two prioritized children")
        if app.s is None or app.t is None:
            raise RuleError("rule 4 needs cut points s and t")
        if not (1 <= app.s < len(ci.children) and 1 <= app.t < len(cj.children)):
            raise RuleError("cut point out of range")
        n_front, n_back = list(ci.children[: app.s]), list(ci.children[app.s :])
        m_front, m_back = list(cj.children[: app.t]), list(cj.children[app.t :])
        merged = Prior(
            (
                _pareto([_prior(n_front), _prior(m_front)]),
                _pareto([_prior(n_back), _prior(m_back)]),
            )
        )
    else:
        raise RuleError(f"unknown rule {app.rule}")

    keep = [c for k, c in enumerate(node.children) if k not in (app.i, app.j)]
    keep.insert(min(app.i, app.j), merged)
    return _pareto(keep)


def apply_rule(tree: PExpr, app: RuleApplication) -> PExpr:
    """Rewrite one Pareto site and return the normalized result."""
    node = subtree_at(tree, app.path)
    if not isinstance(node, Pareto):
        raise RuleError("rewrite site must be a Pareto node")
    n = len(node.children)
    if not (0 <= app.i < n and 0 <= app.j < n) or app.i == app.j:
        raise RuleError("C_i and C_j must be distinct children of the site")
    return normalize(_replace_at(tree, app.path, _rewrite(node, app)))


def rule_new_edges(tree: PExpr, app: RuleApplication) -> list[tuple[int, int]]:
    """The exact p-graph edges the rewrite adds (left set x right set)."""
    node = subtree_at(tree, app.path)
    if not isinstance(node, Pareto):
        raise RuleError("rewrite site must be a Pareto node")
    ci = node.children[app.i]
    cj = node.children[app.j]
    if app.rule == 1:
        assert isinstance(ci, Prior)
        pairs = [(vars_mask(ci.children[0]), vars_mask(cj))]
    elif app.rule == 2:
        assert isinstance(ci, Prior)
        pairs = [(vars_mask(cj), vars_mask(ci.children[-1]))]
    elif app.rule == 3:
        pairs = [(vars_mask(ci), vars_mask(cj))]
    elif app.rule == 4:
        assert isinstance(ci, Prior) and isinstance(cj, Prior)
        assert app.s is not None and app.t is not None
        n_front = _mask_union(ci.children[: app.s])
        n_back = _mask_union(ci.children[app.s :])
        m_front = _mask_union(cj.children[: app.t])
        m_back = _mask_union(cj.children[app.t :])
        pairs = [(n_front, m_back), (m_front, n_back)]
    else:
        raise RuleError(f"unknown rule {app.rule}")
    edges = []
    for left, right in pairs:
        for a in _bits(left):
            for b in _bits(right):
                edges.append((a, b))
    return edges


def _mask_union(parts) -> int:
    out = 0
    for p in parts:
        out |= vars_mask(p)
    return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_applications(tree: PExpr) -> list[RuleApplication]:
    """Every well-shaped rewrite site in the tree, preorder, ordered pairs."""
    out: list[RuleApplication] = []

    def visit(node: PExpr, path: tuple[int, ...]) -> None:
        if isinstance(node, Leaf):
            return
        if isinstance(node, Pareto):
            n = len(node.children)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    ci, cj = node.children[i], node.children[j]
                    if isinstance(ci, Prior):
                        out.append(RuleApplication(1, path, i, j))
                        out.append(RuleApplication(2, path, i, j))
                        if isinstance(cj, Prior) and i < j:
                            # (i,j,s,t) and (j,i,t,s) coincide; keep one
                            for s in range(1, len(ci.children)):
                                for t in range(1, len(cj.children)):
                                    out.append(RuleApplication(4, path, i, j, s, t))
                    elif isinstance(ci, Leaf) and isinstance(cj, Leaf) and i < j:
                        out.append(RuleApplication(3, path, i, j))
                        out.append(RuleApplication(3, path, j, i))
        for k, child in enumerate(node.children):
            visit(child, path + (k,))

    visit(tree, ())
    return out


def minimal_extensions(schema: Schema, tree: PExpr) -> list[tuple[PExpr, PGraph]]:
    """All minimal proper extensions, deduplicated, first-occurrence order."""
    seen: dict[PGraph, None] = {}
    results: list[tuple[PExpr, PGraph]] = []
    for app in enumerate_applications(tree):
        new_tree = apply_rule(tree, app)
        g = from_expr(schema, new_tree)
        if g not in seen:
            seen[g] = None
            results.append((new_tree, g))
    return results


def extension_chain_bound(schema: Schema) -> int:
    """Longest possible chain of proper extensions, counting both ends."""
    n = len(schema)
    return n * (n - 1) + 1
