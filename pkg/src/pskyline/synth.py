"""Synthetic datasets and random hidden relations for benchmarks and tests.

The three dataset families are the usual skyline benchmark trio: independent
uniform values, correlated values (one latent quality per row plus noise),
and anti-correlated values (rows close to a constant-sum plane, which blows
the skyline up).  Values are drawn in floating point and stored on a
six-decimal fixed-point grid so CSV round-trips are exact.
"""

from __future__ import annotations

import random

import numpy as np

from .dominance import PSkylineRelation
from .model import AttributeSpec, Dataset, Schema, Tuple
from .pexpr import Leaf, Pareto, PExpr, Prior, normalize

_SCALE = 6
KINDS = ("uniform", "correlated", "anticorrelated")


def _synthetic_schema(dims: int) -> Schema:
    return Schema(
        tuple(
            AttributeSpec.numeric(f"a{i + 1}", direction="higher", scale=_SCALE)
            for i in range(dims)
        )
    )


def generate(kind: str, n: int, dims: int, seed: int) -> Dataset:
    """Deterministic synthetic dataset; ids run "1".."n"."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if n < 0:
        raise ValueError("n must be non-negative")
    schema = _synthetic_schema(dims)
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        values = rng.random((n, dims))
    elif kind == "correlated":
        quality = rng.random((n, 1))
        values = np.clip(quality + rng.normal(0.0, 0.05, (n, dims)), 0.0, 1.0)
    else:
        # rows spread along the plane sum(x) ~ dims/2: great in some
        # attributes exactly when poor in others
        weights = rng.dirichlet(np.ones(dims), size=n)
        total = rng.normal(dims / 2.0, dims / 20.0, size=(n, 1))
        values = weights * total
    grid = np.rint(values * 10**_SCALE).astype(np.int64)
    tuples = (
        Tuple(str(i + 1), tuple(int(v) for v in row))
        for i, row in enumerate(grid)
    )
    return Dataset(schema, tuples)


def random_hidden_relation(schema: Schema, seed: int) -> PSkylineRelation:
    """A uniformly-shaped random full relation, deterministic per seed.

    The attribute set is shuffled, then recursively partitioned: with
    probability one half the node is a prioritized chain over 2..4 blocks,
    otherwise a Pareto combination, recursing into each block.  Every
    relation shape is reachable this way.
    """
    rng = random.Random(seed)
    attrs = list(range(len(schema)))
    rng.shuffle(attrs)

    def build(items: list[int]) -> PExpr:
        if len(items) == 1:
            return Leaf(items[0])
        blocks = min(len(items), rng.randint(2, 4))
        cuts = sorted(rng.sample(range(1, len(items)), blocks - 1))
        parts = [
            items[a:b] for a, b in zip([0] + cuts, cuts + [len(items)])
        ]
        kind = Prior if rng.random() < 0.5 else Pareto
        return kind(tuple(build(p) for p in parts))

    tree = normalize(build(attrs))
    return PSkylineRelation.from_expr(schema, tree)
