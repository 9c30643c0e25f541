"""Shared fixtures: the cars rows used throughout, plus small schema builders."""

import itertools

import pytest

from pskyline import (
    Dataset,
    Schema,
    Tuple,
    enumerate_all_pskylines,
    load_dataset_csv,
    load_schema,
)
from pskyline.model import AttributeSpec

CARS_SCHEMA_JSON = """{
  "attributes": [
    {"name": "make", "kind": "categorical", "ranked": ["bmw", "ford", "kia"]},
    {"name": "price", "kind": "numeric", "preference": "lower"},
    {"name": "year", "kind": "numeric", "preference": "higher"}
  ]
}"""

CARS_CSV = """id,make,price,year
t1,ford,30000,2007
t2,bmw,45000,2008
t3,kia,20000,2007
t4,ford,40000,2008
t5,bmw,50000,2006
"""


def numeric_schema(n: int, prefix: str = "A") -> Schema:
    """n numeric attributes named A1..An, larger values preferred."""
    return Schema(
        tuple(
            AttributeSpec.numeric(f"{prefix}{i + 1}", direction="higher")
            for i in range(n)
        )
    )


def grid_dataset(schema: Schema, values=(0, 1, 2)) -> Dataset:
    """One tuple per point of the full value grid, ids counting from "0"."""
    rows = [
        Tuple(id=str(i), values=combo)
        for i, combo in enumerate(itertools.product(values, repeat=len(schema)))
    ]
    return Dataset(schema, rows)


@pytest.fixture(scope="session")
def cars_schema() -> Schema:
    return load_schema(CARS_SCHEMA_JSON)


@pytest.fixture(scope="session")
def cars(cars_schema: Schema) -> Dataset:
    return load_dataset_csv(cars_schema, CARS_CSV)


@pytest.fixture(scope="session")
def rels3():
    """All 19 full p-skyline relations over three attributes."""
    return list(enumerate_all_pskylines(numeric_schema(3)))


@pytest.fixture(scope="session")
def rels4():
    """All 195 full p-skyline relations over four attributes."""
    return list(enumerate_all_pskylines(numeric_schema(4)))
