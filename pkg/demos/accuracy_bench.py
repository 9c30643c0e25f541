"""Small elicitation-accuracy benchmark on synthetic data.

Hides a random relation, samples some of its winnow as superior examples,
elicits a relation from the sample alone, and scores the recovered winnow
against the hidden one.

    python3 demos/accuracy_bench.py
"""

from pskyline import generate, random_hidden_relation, run_accuracy_experiment, winnow

pool = generate("uniform", 400, 5, seed=12)
print(f"pool: {len(pool)} rows x {len(pool.schema)} attributes")

for h in range(3):
    hidden = random_hidden_relation(pool.schema, seed=100 + h)
    hid_winnow = winnow(hidden, pool)
    sizes = [2, max(2, len(hid_winnow) // 2), len(hid_winnow)]
    reports = run_accuracy_experiment(pool, hidden, sizes, trials=3, seed=h)
    print(f"\nhidden: {hidden.expression()}  (winnow {len(hid_winnow)})")
    print("  |G|  precision  recall     F  winnow ratio")
    for rep in reports:
        print(
            f"  {rep.g_size:3d}  {rep.precision:9.3f}  {rep.recall:6.3f}"
            f"  {rep.f_measure:4.2f}  {rep.winnow_size_ratio:12.3f}"
        )
