"""Walk the used-cars rows through the whole pipeline.

Run from the repo root after an editable install:

    python3 demos/cars_walkthrough.py
"""

from pskyline import (
    PSkylineRelation,
    build_negative,
    elicit,
    load_dataset_csv,
    load_schema,
    remove_redundant,
    skyline,
    winnow,
)

SCHEMA = """{
  "attributes": [
    {"name": "make", "kind": "categorical", "ranked": ["bmw", "ford", "kia"]},
    {"name": "price", "kind": "numeric", "preference": "lower"},
    {"name": "year", "kind": "numeric", "preference": "higher"}
  ]
}"""

CSV = """id,make,price,year
t1,ford,30000,2007
t2,bmw,45000,2008
t3,kia,20000,2007
t4,ford,40000,2008
t5,bmw,50000,2006
"""

schema = load_schema(SCHEMA)
cars = load_dataset_csv(schema, CSV)

print("rows:")
for t in cars:
    print("  ", t.id, dict(zip(schema.names(), t.values)))

sky = skyline(cars)
print("\nskyline (no attribute is more important than any other):")
print("  ", [t.id for t in sky])

rel = PSkylineRelation.from_expr(schema, "year & (price * make)")
print("\nwinnow under 'year & (price * make)':")
print("  ", [t.id for t in winnow(rel, cars)])
print("   year outranks the other two, so the 2008 cars push out the rest")

# Suppose the user insists t3 must survive.  Each other row induces one
# negative constraint saying "this row must not be allowed to dominate t3".
n_sys = build_negative(schema, cars, ["t3"])
print("\nnegative constraints protecting t3:")
for c in n_sys:
    print("  ", c.lhs.names(schema), "must not cover", c.rhs.names(schema),
          " (from", [pair[0] for pair in c.provenance], ")")
kept = remove_redundant(n_sys)
print("after dropping implied ones:")
for c in kept:
    print("  ", c.lhs.names(schema), "must not cover", c.rhs.names(schema))

elicited = elicit(cars, ["t3"])
print("\nelicited maximal relation keeping t3:")
print("  ", elicited.expression())
print("   winnow:", [t.id for t in winnow(elicited, cars)])
