"""p-expressions: grammar, syntax trees, and normalization.

A p-expression combines single-attribute preferences with two n-ary operators:
prioritized accumulation (`&`, earlier operands matter more) and Pareto
accumulation (`*`, operands matter equally).  Each attribute may appear at
most once.  Concrete syntax:

    expr  := pterm ('*' pterm)*
    pterm := factor ('&' factor)*
    factor := IDENT | '(' expr ')'

`&` binds tighter than `*`; both are left-associative and semantically
associative, so chains are stored flattened.  A tree is *normalized* when no
non-leaf node has a child of the same kind; normalization preserves the
induced preference relation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .model import AttrSet, Schema


@dataclass(frozen=True)
class Leaf:
    attr: int


@dataclass(frozen=True)
class Prior:
    children: tuple["PExpr", ...]


@dataclass(frozen=True)
class Pareto:
    children: tuple["PExpr", ...]


PExpr = Union[Leaf, Prior, Pareto]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ExprError(ValueError):
    pass


def vars_mask(e: PExpr) -> int:
    if isinstance(e, Leaf):
        return 1 << e.attr
    m = 0
    for c in e.children:
        m |= vars_mask(c)
    return m


def vars_of(e: PExpr) -> AttrSet:
    """The set of attributes the expression mentions."""
    return AttrSet(vars_mask(e))


def iter_leaves(e: PExpr) -> Iterator[Leaf]:
    if isinstance(e, Leaf):
        yield e
    else:
        for c in e.children:
            yield from iter_leaves(c)


def check_expr(schema: Schema, e: PExpr) -> None:
    """Reject out-of-range indices, repeated attributes, and short arities."""
    seen = 0
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            if not (0 <= node.attr < len(schema)):
                raise ExprError(f"attribute index {node.attr} outside schema")
            bit = 1 << node.attr
            if seen & bit:
                raise ExprError(
                    f"attribute {schema.attributes[node.attr].name!r} used more than once"
                )
            seen |= bit
        else:
            if len(node.children) < 2:
                raise ExprError("operator nodes need at least two children")
            stack.extend(node.children)


def is_full(schema: Schema, e: PExpr) -> bool:
    return vars_mask(e) == (1 << len(schema)) - 1


def normalize(e: PExpr) -> PExpr:
    """Merge same-kind nested operators and drop single-child wrappers.

    Idempotent, and leaves the induced relation (hence the p-graph) unchanged.
    Child order is preserved; Pareto children are not sorted here because tree
    identity is positional even though Pareto is commutative.
    """
    if isinstance(e, Leaf):
        return e
    kids: list[PExpr] = []
    for c in e.children:
        c = normalize(c)
        if type(c) is type(e):
            kids.extend(c.children)  # type: ignore[union-attr]
        else:
            kids.append(c)
    if len(kids) == 1:
        return kids[0]
    return type(e)(tuple(kids))


def is_normalized(e: PExpr) -> bool:
    if isinstance(e, Leaf):
        return True
    if len(e.children) < 2:
        return False
    return all(type(c) is not type(e) and is_normalized(c) for c in e.children)


def skyline_expr(schema: Schema) -> PExpr:
    """The all-Pareto expression: every attribute equally important."""
    if len(schema) == 1:
        return Leaf(0)
    return Pareto(tuple(Leaf(i) for i in range(len(schema))))


# --- concrete syntax ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[*&()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        if m.group("ident"):
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, schema: Schema, text: str):
        self.schema = schema
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> PExpr:
        terms = [self.pterm()]
        while self.peek()[0] == "*":
            self.take()
            terms.append(self.pterm())
        return terms[0] if len(terms) == 1 else Pareto(tuple(terms))

    def pterm(self) -> PExpr:
        factors = [self.factor()]
        while self.peek()[0] == "&":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prior(tuple(factors))

    def factor(self) -> PExpr:
        kind, value, pos = self.take()
        if kind == "ident":
            try:
                return Leaf(self.schema.index(value))
            except Exception:
                raise ParseError(f"unknown attribute {value!r}", pos) from None
        if kind == "(":
            inner = self.expr()
            kind2, _, pos2 = self.take()
            if kind2 != ")":
                raise ParseError("expected ')'", pos2)
            return inner
        raise ParseError(f"expected an attribute or '(', got {value!r}", pos)


def parse(schema: Schema, text: str) -> PExpr:
    """Parse concrete syntax into an AST, flattening operator chains.

    The result is not necessarily normalized: explicit parentheses such as
    "(a & b) & c" keep their nesting until `normalize` is applied.
    """
    p = _Parser(schema, text)
    e = p.expr()
    kind, value, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input starting with {value!r}", pos)
    # repeated-attribute detection with a position-free but named error
    seen: set[int] = set()
    for leaf in iter_leaves(e):
        if leaf.attr in seen:
            raise ParseError(
                f"attribute {schema.attributes[leaf.attr].name!r} used more than once", 0
            )
        seen.add(leaf.attr)
    return e


def to_text(schema: Schema, e: PExpr) -> str:
    """Render with minimal parentheses under the grammar's precedence."""

    def render(node: PExpr, parent: str) -> str:
        if isinstance(node, Leaf):
            return schema.attributes[node.attr].name
        if isinstance(node, Prior):
            body = " & ".join(render(c, "prior") for c in node.children)
            # a Prior child inside a Prior only occurs in non-normalized
            # trees; parenthesize to preserve the explicit nesting
            return f"({body})" if parent == "prior" else body
        body = " * ".join(render(c, "pareto") for c in node.children)
        return f"({body})" if parent in ("prior", "pareto") else body

    return render(e, "top")


# --- JSON AST -------------------------------------------------------------

def expr_to_json(schema: Schema, e: PExpr) -> dict:
    if isinstance(e, Leaf):
        return {"attr": schema.attributes[e.attr].name}
    op = "prior" if isinstance(e, Prior) else "pareto"
    return {"op": op, "children": [expr_to_json(schema, c) for c in e.children]}


def expr_from_json(schema: Schema, doc: dict | str) -> PExpr:
    if isinstance(doc, str):
        doc = json.loads(doc)

    def build(node: dict) -> PExpr:
        if "attr" in node:
            return Leaf(schema.index(node["attr"]))
        op = node.get("op")
        kids = tuple(build(c) for c in node.get("children", ()))
        if op == "prior":
            return Prior(kids)
        if op == "pareto":
            return Pareto(kids)
        raise ExprError(f"unknown AST node {node!r}")

    e = build(doc)
    check_expr(schema, e)
    return e
