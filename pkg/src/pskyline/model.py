"""Schemas, attribute preferences, tuples, datasets, and attribute sets.

Every attribute carries a total order over its domain: numeric attributes are
directed (higher-better or lower-better), categorical attributes rank a closed
list of tokens best to worst.  Numeric cells are stored as exact 64-bit
integers scaled by a per-attribute decimal exponent so that value equality,
which the preference semantics relies on, never depends on float rounding.

Attribute subsets show up everywhere downstream (Var sets, BetIn/Diff/Top,
constraint sides), so they are kept as machine-word bit vectors (`AttrSet`)
indexed by attribute position.  Schemas are capped at 64 attributes for that
reason.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

MAX_ATTRIBUTES = 64

Value = Union[int, str]


class ModelError(ValueError):
    """Base class for schema/data validation failures."""


class SchemaError(ModelError):
    pass


class DataError(ModelError):
    pass


class Ordering(Enum):
    BETTER = 1
    EQUAL = 0
    WORSE = -1


@dataclass(frozen=True)
class AttributeSpec:
    """One attribute: a name plus a total order over its domain.

    Exactly one preference form may be present: `direction` for numeric
    attributes, `ranked` (best first) for categorical ones.  `scale` is the
    number of decimal digits kept for numeric cells; raw cell text with more
    fractional digits than `scale` is rejected at load time.
    """

    name: str
    kind: str  # "numeric" | "categorical"
    direction: str | None = None  # "higher" | "lower"
    ranked: tuple[str, ...] | None = None
    scale: int = 0

    def __post_init__(self) -> None:
        if not self.name or not isinstance(self.name, str):
            raise SchemaError("attribute name must be a non-empty string")
        if self.kind == "numeric":
            if self.direction not in ("higher", "lower"):
                raise SchemaError(
                    f"numeric attribute {self.name!r} needs direction 'higher' or 'lower'"
                )
            if self.ranked is not None:
                raise SchemaError(
                    f"numeric attribute {self.name!r} must not carry ranked values"
                )
            if not (0 <= self.scale <= 18):
                raise SchemaError(f"scale for {self.name!r} out of range [0, 18]")
        elif self.kind == "categorical":
            if self.direction is not None:
                raise SchemaError(
                    f"categorical attribute {self.name!r} must not carry a direction"
                )
            if not self.ranked:
                raise SchemaError(
                    f"categorical attribute {self.name!r} needs a non-empty ranked list"
                )
            if len(set(self.ranked)) != len(self.ranked):
                raise SchemaError(f"ranked values of {self.name!r} contain duplicates")
            if self.scale != 0:
                raise SchemaError(f"scale is meaningless for categorical {self.name!r}")
        else:
            raise SchemaError(f"unknown attribute kind {self.kind!r}")

    @classmethod
    def numeric(cls, name: str, direction: str = "higher", scale: int = 0) -> "AttributeSpec":
        return cls(name=name, kind="numeric", direction=direction, scale=scale)

    @classmethod
    def categorical(cls, name: str, ranked: Sequence[str]) -> "AttributeSpec":
        return cls(name=name, kind="categorical", ranked=tuple(ranked))


@dataclass(frozen=True)
class Schema:
    """Ordered attribute list; the position of an attribute is its index."""

    attributes: tuple[AttributeSpec, ...]

    def __post_init__(self) -> None:
        if not (1 <= len(self.attributes) <= MAX_ATTRIBUTES):
            raise SchemaError(
                f"schema must have between 1 and {MAX_ATTRIBUTES} attributes, got {len(self.attributes)}"
            )
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise SchemaError(f"duplicate attribute names: {', '.join(dupes)}")

    @cached_property
    def _by_name(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.attributes)}

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise SchemaError(f"unknown attribute {name!r}") from None

    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def all_attrs(self) -> "AttrSet":
        return AttrSet((1 << len(self.attributes)) - 1)

    def __len__(self) -> int:
        return len(self.attributes)

    def __iter__(self) -> Iterator[AttributeSpec]:
        return iter(self.attributes)

    def __getitem__(self, index: int) -> AttributeSpec:
        return self.attributes[index]


class AttrSet:
    """Immutable set of attribute indices backed by a single int bit vector."""

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("negative bit pattern")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("AttrSet is immutable")

    @classmethod
    def of(cls, *indices: int) -> "AttrSet":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_names(cls, schema: Schema, names: Iterable[str]) -> "AttrSet":
        bits = 0
        for n in names:
            bits |= 1 << schema.index(n)
        return cls(bits)

    def names(self, schema: Schema) -> list[str]:
        return [schema.attributes[i].name for i in self]

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def __or__(self, other: "AttrSet") -> "AttrSet":
        return AttrSet(self.bits | other.bits)

    def __and__(self, other: "AttrSet") -> "AttrSet":
        return AttrSet(self.bits & other.bits)

    def __sub__(self, other: "AttrSet") -> "AttrSet":
        return AttrSet(self.bits & ~other.bits)

    def __le__(self, other: "AttrSet") -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "AttrSet") -> bool:
        return self.bits != other.bits and self.bits & ~other.bits == 0

    def __ge__(self, other: "AttrSet") -> bool:
        return other.bits & ~self.bits == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AttrSet) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def isdisjoint(self, other: "AttrSet") -> bool:
        return self.bits & other.bits == 0

    def __repr__(self) -> str:
        return f"AttrSet({{{', '.join(map(str, self))}}})"


@dataclass(frozen=True)
class Tuple:
    """A row: stable identifier plus values aligned to schema positions."""

    id: str
    values: tuple[Value, ...]


class Dataset:
    """An ordered collection of tuples over one schema, with distinct ids."""

    def __init__(self, schema: Schema, tuples: Iterable[Tuple]):
        self.schema = schema
        self.tuples: tuple[Tuple, ...] = tuple(tuples)
        index: dict[str, int] = {}
        for pos, t in enumerate(self.tuples):
            if t.id in index:
                raise DataError(f"duplicate tuple id {t.id!r}")
            if len(t.values) != len(schema):
                raise DataError(
                    f"tuple {t.id!r} has {len(t.values)} values, schema has {len(schema)}"
                )
            for attr, v in zip(schema.attributes, t.values):
                _check_value(attr, v, t.id)
            index[t.id] = pos
        self._index = index

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[Tuple]:
        return iter(self.tuples)

    def ids(self) -> list[str]:
        return [t.id for t in self.tuples]

    def __contains__(self, tuple_id: str) -> bool:
        return tuple_id in self._index

    def by_id(self, tuple_id: str) -> Tuple:
        try:
            return self.tuples[self._index[tuple_id]]
        except KeyError:
            raise DataError(f"unknown tuple id {tuple_id!r}") from None

    def index_of(self, tuple_id: str) -> int:
        try:
            return self._index[tuple_id]
        except KeyError:
            raise DataError(f"unknown tuple id {tuple_id!r}") from None

    def subset(self, ids: Iterable[str]) -> "Dataset":
        """Tuples with the given ids, kept in this dataset's order."""
        wanted = set(ids)
        missing = wanted - self._index.keys()
        if missing:
            raise DataError(f"unknown tuple ids: {', '.join(sorted(missing))}")
        return Dataset(self.schema, (t for t in self.tuples if t.id in wanted))

    @cached_property
    def ranks(self) -> tuple[tuple[int, ...], ...]:
        """Per-tuple integer ranks where larger always means better.

        This folds the preference direction into the encoding once, so all
        dominance machinery can compare plain ints regardless of attribute
        kind.  Rank equality coincides with value equality per attribute.
        """
        return tuple(
            tuple(rank_value(a, v) for a, v in zip(self.schema.attributes, t.values))
            for t in self.tuples
        )


def _check_value(attr: AttributeSpec, v: Value, tuple_id: str) -> None:
    if attr.kind == "numeric":
        if not isinstance(v, int) or isinstance(v, bool):
            raise DataError(
                f"tuple {tuple_id!r}: attribute {attr.name!r} expects a scaled int, got {type(v).__name__}"
            )
        if not (-(1 << 63) <= v < 1 << 63):
            raise DataError(f"tuple {tuple_id!r}: {attr.name!r} outside 64-bit range")
    else:
        if not isinstance(v, str):
            raise DataError(
                f"tuple {tuple_id!r}: attribute {attr.name!r} expects a token, got {type(v).__name__}"
            )
        if v not in attr.ranked:  # closed domain
            raise DataError(
                f"tuple {tuple_id!r}: value {v!r} not in ranked list of {attr.name!r}"
            )


def rank_value(attr: AttributeSpec, v: Value) -> int:
    """Map a value to an int where larger is better under this attribute."""
    if attr.kind == "numeric":
        return v if attr.direction == "higher" else -v
    try:
        return len(attr.ranked) - 1 - attr.ranked.index(v)
    except ValueError:
        raise DataError(f"value {v!r} not in ranked list of {attr.name!r}") from None


def compare_values(attr: AttributeSpec, v1: Value, v2: Value) -> Ordering:
    """Trichotomous comparison of two values under one attribute's order."""
    r1, r2 = rank_value(attr, v1), rank_value(attr, v2)
    if r1 > r2:
        return Ordering.BETTER
    if r1 < r2:
        return Ordering.WORSE
    return Ordering.EQUAL


# --- schema JSON ----------------------------------------------------------

def load_schema(json_text: str) -> Schema:
    try:
        doc = json.loads(json_text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"schema is not valid JSON: {e}") from None
    if not isinstance(doc, dict) or "attributes" not in doc:
        raise SchemaError('schema JSON must be an object with an "attributes" list')
    attrs = []
    for entry in doc["attributes"]:
        if not isinstance(entry, dict):
            raise SchemaError("each attribute must be a JSON object")
        extra = set(entry) - {"name", "kind", "preference", "ranked", "scale"}
        if extra:
            raise SchemaError(f"unknown attribute keys: {', '.join(sorted(extra))}")
        name = entry.get("name")
        kind = entry.get("kind")
        if kind == "numeric":
            direction = entry.get("preference")
            scale = entry.get("scale", 0)
            if "ranked" in entry:
                raise SchemaError(f"numeric attribute {name!r} must not have 'ranked'")
            if not isinstance(scale, int):
                raise SchemaError(f"scale of {name!r} must be an int")
            attrs.append(AttributeSpec(name=name, kind="numeric", direction=direction, scale=scale))
        elif kind == "categorical":
            if "preference" in entry or "scale" in entry:
                raise SchemaError(
                    f"categorical attribute {name!r} takes only a 'ranked' list"
                )
            ranked = entry.get("ranked")
            if not isinstance(ranked, list):
                raise SchemaError(f"'ranked' of {name!r} must be a list")
            attrs.append(AttributeSpec(name=name, kind="categorical", ranked=tuple(ranked)))
        else:
            raise SchemaError(f"attribute {name!r} has unknown kind {kind!r}")
    return Schema(tuple(attrs))


def schema_to_json(schema: Schema) -> str:
    out = []
    for a in schema.attributes:
        if a.kind == "numeric":
            entry: dict = {"name": a.name, "kind": "numeric", "preference": a.direction}
            if a.scale:
                entry["scale"] = a.scale
        else:
            entry = {"name": a.name, "kind": "categorical", "ranked": list(a.ranked)}
        out.append(entry)
    return json.dumps({"attributes": out}, indent=2)


# --- dataset CSV ----------------------------------------------------------

def parse_numeric_cell(attr: AttributeSpec, text: str) -> int:
    try:
        dec = Decimal(text.strip())
    except InvalidOperation:
        raise DataError(f"cannot parse {text!r} as a number for {attr.name!r}") from None
    scaled = dec.scaleb(attr.scale)
    if scaled != scaled.to_integral_value():
        raise DataError(
            f"value {text!r} has more precision than {attr.name!r} allows (scale {attr.scale})"
        )
    v = int(scaled)
    if not (-(1 << 63) <= v < 1 << 63):
        raise DataError(f"value {text!r} out of 64-bit range for {attr.name!r}")
    return v


def format_numeric_cell(attr: AttributeSpec, v: int) -> str:
    if attr.scale == 0:
        return str(v)
    return format(Decimal(v).scaleb(-attr.scale), "f")


def load_dataset_csv(schema: Schema, csv_text: str) -> Dataset:
    """Parse an RFC-4180 CSV whose header names the schema attributes.

    Columns may appear in any order.  An optional `id` column supplies row
    identifiers; otherwise rows are numbered "1".."n" in file order.
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("CSV is empty, expected a header row") from None
    header = [h.strip() for h in header]
    known = set(schema.names())
    for col in header:
        if col != "id" and col not in known:
            raise DataError(f"unknown CSV column {col!r}")
    if len(set(header)) != len(header):
        raise DataError("duplicate CSV column")
    missing = known - set(header)
    if missing:
        raise DataError(f"missing CSV columns: {', '.join(sorted(missing))}")
    id_col = header.index("id") if "id" in header else None
    col_of = {name: header.index(name) for name in schema.names()}

    tuples = []
    row_no = 0
    for row in reader:
        if not row or (len(row) == 1 and row[0].strip() == ""):
            continue
        row_no += 1
        if len(row) != len(header):
            raise DataError(f"row {row_no} has {len(row)} cells, header has {len(header)}")
        tid = row[id_col].strip() if id_col is not None else str(row_no)
        if id_col is not None and not tid:
            raise DataError(f"row {row_no} has an empty id")
        values: list[Value] = []
        for attr in schema.attributes:
            cell = row[col_of[attr.name]].strip()
            if attr.kind == "numeric":
                values.append(parse_numeric_cell(attr, cell))
            else:
                values.append(cell)
        tuples.append(Tuple(id=tid, values=tuple(values)))
    return Dataset(schema, tuples)


def dump_dataset_csv(dataset: Dataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id"] + dataset.schema.names())
    for t in dataset.tuples:
        cells = [t.id]
        for attr, v in zip(dataset.schema.attributes, t.values):
            cells.append(format_numeric_cell(attr, v) if attr.kind == "numeric" else v)
        writer.writerow(cells)
    return buf.getvalue()
