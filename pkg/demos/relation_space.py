"""Explore the space of full preference relations over a few attributes.

Counts them, shows how one relation extends into another, and checks the
edge-subset containment test against an explicit winnow comparison.

    python3 demos/relation_space.py
"""

import itertools

from pskyline import (
    Dataset,
    Schema,
    Tuple,
    contains,
    enumerate_all_pskylines,
    extension_chain_bound,
    minimal_extensions,
    sky_relation,
    to_text,
    winnow,
)
from pskyline.model import AttributeSpec

schema = Schema(tuple(
    AttributeSpec.numeric(name, direction="higher") for name in ("x", "y", "z")
))

rels = list(enumerate_all_pskylines(schema))
print(f"{len(rels)} full relations over 3 attributes")
for n in (1, 2, 4):
    s = Schema(tuple(
        AttributeSpec.numeric(f"a{i}", direction="higher") for i in range(n)
    ))
    print(f"  over {n}: {sum(1 for _ in enumerate_all_pskylines(s))}")

# start from the skyline relation (empty graph) and walk a chain of minimal
# extensions until no strictly larger relation exists
rel = sky_relation(schema)
chain = [rel]
while True:
    exts = minimal_extensions(schema, rel.tree)
    if not exts:
        break
    tree, _ = exts[0]
    rel = rel.from_expr(schema, to_text(schema, tree))
    chain.append(rel)
print("\none greedy extension chain:")
for r in chain:
    print("  ", r.expression(), " edges:", len(r.graph.edges()))
print("bound on chain length:", extension_chain_bound(schema))

# containment of graphs is containment of relations; spot-check with winnow
# on the 0/1/2 grid (minus the all-best corner, which would dominate all)
grid = Dataset(schema, [
    Tuple(str(i), combo)
    for i, combo in enumerate(itertools.product((0, 1, 2), repeat=3))
    if combo != (2, 2, 2)
])
small, big = chain[0], chain[-1]
assert contains(small.graph, big.graph)
w_small = {t.id for t in winnow(small, grid)}
w_big = {t.id for t in winnow(big, grid)}
print("\nwinnow sizes along the chain ends:", len(w_small), "->", len(w_big))
assert w_big <= w_small
print("the more opinionated relation keeps a subset, as containment promises")
