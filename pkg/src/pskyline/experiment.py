"""Hidden-relation recovery experiments: elicit from samples, score the result.

The protocol treats an existing relation as a hidden ground truth: sample
superior examples from its winnow, elicit with a few attribute orders, keep
the relation with the smallest winnow, and compare that winnow against the
hidden one by precision, recall and F-measure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dominance import PSkylineRelation, skyline, winnow
from .elicitation import ElicitConfig, elicit
from .model import Dataset


@dataclass(frozen=True)
class ExperimentReport:
    """Mean scores for one superior-sample size."""

    g_size: int
    precision: float
    recall: float
    f_measure: float
    winnow_size_ratio: float
    trials: int
    elapsed_s: float
    note: str | None = None


def _f_measure(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def _pick_smallest(candidates: list[PSkylineRelation], pool: Dataset) -> Dataset:
    """Winnow of the candidate with the fewest survivors; ties go to the
    lexicographically smallest p-graph edge list."""
    best = None
    best_key = None
    for rel in candidates:
        w = winnow(rel, pool)
        key = (len(w), sorted(rel.graph.edges()))
        if best_key is None or key < best_key:
            best, best_key = w, key
    assert best is not None
    return best


def run_accuracy_experiment(
    pool: Dataset,
    hidden: PSkylineRelation,
    g_sizes: Sequence[int],
    trials: int,
    seed: int,
    orders_per_trial: int = 3,
) -> list[ExperimentReport]:
    """Score elicitation against a hidden relation for each sample size.

    Sizes larger than the hidden winnow are clamped (noted in the report);
    a size of zero yields a skipped report.
    """
    rng = random.Random(seed)
    hidden_ids = [t.id for t in winnow(hidden, pool).tuples]
    sky_size = len(skyline(pool))
    names = pool.schema.names()
    reports = []
    for requested in g_sizes:
        note = None
        size = requested
        if size > len(hidden_ids):
            size = len(hidden_ids)
            note = f"requested {requested} but hidden winnow has {size}; clamped"
        if size <= 0:
            reports.append(
                ExperimentReport(requested, 0.0, 0.0, 0.0, 0.0, 0, 0.0,
                                 note="skipped: empty superior sample")
            )
            continue
        p_sum = r_sum = f_sum = ratio_sum = 0.0
        started = time.perf_counter()
        for _ in range(trials):
            g = rng.sample(hidden_ids, size)
            candidates = []
            for _ in range(orders_per_trial):
                order = tuple(rng.sample(names, len(names)))
                candidates.append(
                    elicit(pool, g, ElicitConfig(attr_order=order))
                )
            chosen = _pick_smallest(candidates, pool)
            kept = {t.id for t in chosen.tuples}
            overlap = len(kept & set(hidden_ids))
            p = overlap / len(kept) if kept else 0.0
            r = overlap / len(hidden_ids)
            p_sum += p
            r_sum += r
            f_sum += _f_measure(p, r)
            ratio_sum += len(kept) / sky_size
        elapsed = time.perf_counter() - started
        reports.append(
            ExperimentReport(
                g_size=size,
                precision=p_sum / trials,
                recall=r_sum / trials,
                f_measure=f_sum / trials,
                winnow_size_ratio=ratio_sum / trials,
                trials=trials,
                elapsed_s=elapsed,
                note=note,
            )
        )
    return reports
