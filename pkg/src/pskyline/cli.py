"""Command-line harness around the library.

Every data-facing subcommand takes --schema (JSON file) and --data (CSV
file); results print as short human-readable lines unless --json is given.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from .constraints import build_negative, reduce_via_skyline, remove_redundant, system_to_json
from .dominance import PSkylineRelation, dominates, skyline, winnow
from .elicitation import ElicitConfig, brute_force_df, brute_force_opt_fdf, elicit
from .experiment import run_accuracy_experiment
from .extension import minimal_extensions
from .model import Dataset, ModelError, Schema, dump_dataset_csv, load_dataset_csv, load_schema, schema_to_json
from .pexpr import ParseError, check_expr, is_full, normalize, parse, to_text, vars_of
from .pgraph import from_expr, graph_to_dot, graph_to_json
from .synth import KINDS, generate, random_hidden_relation


def _load_schema(path: str) -> Schema:
    try:
        return load_schema(Path(path).read_text())
    except (OSError, ModelError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"schema: {exc}")


def _load_data(schema: Schema, path: str) -> Dataset:
    try:
        return load_dataset_csv(schema, Path(path).read_text())
    except (OSError, ModelError) as exc:
        raise click.ClickException(f"data: {exc}")


def _relation(schema: Schema, pexpr: str) -> PSkylineRelation:
    try:
        return PSkylineRelation.from_expr(schema, pexpr)
    except (ParseError, ValueError) as exc:
        raise click.ClickException(f"pexpr: {exc}")


def _ids(data: Dataset) -> list[str]:
    return [t.id for t in data.tuples]


def _emit(as_json: bool, doc, text_lines) -> None:
    if as_json:
        click.echo(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            click.echo(line)


def _split_ids(values: tuple[str, ...]) -> list[str]:
    out: list[str] = []
    for v in values:
        out.extend(p for p in (s.strip() for s in v.split(",")) if p)
    return out


schema_opt = click.option("--schema", "schema_path", required=True,
                          type=click.Path(exists=True), help="Schema JSON file.")
data_opt = click.option("--data", "data_path", required=True,
                        type=click.Path(exists=True), help="Dataset CSV file.")
json_opt = click.option("--json", "as_json", is_flag=True, help="Emit JSON.")


@click.group()
def main() -> None:
    """Preference queries with prioritized and Pareto attribute importance."""


@main.command("skyline")
@schema_opt
@data_opt
@json_opt
def skyline_cmd(schema_path: str, data_path: str, as_json: bool) -> None:
    """Tuples not Pareto-dominated by any other tuple."""
    schema = _load_schema(schema_path)
    data = _load_data(schema, data_path)
    ids = _ids(skyline(data))
    _emit(as_json, {"ids": ids}, [" ".join(ids)])


@main.command("winnow")
@schema_opt
@data_opt
@click.option("--pexpr", required=True, help="Full preference expression.")
@json_opt
def winnow_cmd(schema_path: str, data_path: str, pexpr: str, as_json: bool) -> None:
    """Undominated tuples under the given expression."""
    schema = _load_schema(schema_path)
    data = _load_data(schema, data_path)
    rel = _relation(schema, pexpr)
    ids = _ids(winnow(rel, data))
    _emit(as_json, {"expression": rel.expression(), "ids": ids}, [" ".join(ids)])


@main.command("dominates")
@schema_opt
@data_opt
@click.option("--pexpr", required=True)
@click.option("--left", required=True, help="Candidate dominator id.")
@click.option("--right", required=True, help="Candidate dominated id.")
@json_opt
def dominates_cmd(schema_path: str, data_path: str, pexpr: str,
                  left: str, right: str, as_json: bool) -> None:
    """Whether LEFT dominates RIGHT under the expression."""
    schema = _load_schema(schema_path)
    data = _load_data(schema, data_path)
    rel = _relation(schema, pexpr)
    try:
        verdict = dominates(rel, data.by_id(left), data.by_id(right))
    except ModelError as exc:
        raise click.ClickException(str(exc))
    _emit(as_json, {"left": left, "right": right, "dominates": verdict},
          [f"{left} {'dominates' if verdict else 'does not dominate'} {right}"])


@main.command("validate-pexpr")
@schema_opt
@click.option("--pexpr", required=True)
@json_opt
def validate_pexpr_cmd(schema_path: str, pexpr: str, as_json: bool) -> None:
    """Parse an expression and report whether it is well-formed and full."""
    schema = _load_schema(schema_path)
    try:
        tree = normalize(parse(schema, pexpr))
        check_expr(schema, tree)
    except (ParseError, ValueError) as exc:
        _emit(as_json, {"ok": False, "error": str(exc)}, [f"invalid: {exc}"])
        sys.exit(1)
    doc = {
        "ok": True,
        "normalized": to_text(schema, tree),
        "attributes": sorted(vars_of(tree).names(schema)),
        "full": is_full(schema, tree),
    }
    _emit(as_json, doc, [f"ok: {doc['normalized']}"
                         + ("" if doc["full"] else "  (not full: misses attributes)")])


@main.command("pgraph")
@schema_opt
@click.option("--pexpr", required=True)
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot",
              show_default=True)
def pgraph_cmd(schema_path: str, pexpr: str, fmt: str) -> None:
    """Print the attribute-importance graph of an expression."""
    schema = _load_schema(schema_path)
    rel = _relation(schema, pexpr)
    if fmt == "json":
        click.echo(json.dumps(graph_to_json(rel.graph), indent=2))
    else:
        click.echo(graph_to_dot(rel.graph))


@main.command("extend")
@schema_opt
@click.option("--pexpr", required=True)
@click.option("--list", "list_all", is_flag=True,
              help="Print every minimal extension, not just the count.")
@json_opt
def extend_cmd(schema_path: str, pexpr: str, list_all: bool, as_json: bool) -> None:
    """Minimal ways to make the relation strictly more opinionated."""
    schema = _load_schema(schema_path)
    rel = _relation(schema, pexpr)
    base_edges = set(rel.graph.edges())
    names = schema.names()
    rows = []
    for tree, graph in minimal_extensions(schema, rel.tree):
        added = [
            [names[a], names[b]] for a, b in graph.edges() if (a, b) not in base_edges
        ]
        rows.append({"expression": to_text(schema, tree), "added_edges": added})
    if not list_all:
        _emit(as_json, {"count": len(rows)}, [str(len(rows))])
        return
    text = [
        f"{r['expression']}   (+ {', '.join('>'.join(e) for e in r['added_edges'])})"
        for r in rows
    ]
    _emit(as_json, {"count": len(rows), "extensions": rows}, text)


@main.command("constraints")
@schema_opt
@data_opt
@click.option("--superior", multiple=True, required=True,
              help="Superior tuple id (repeat or comma-separate).")
@click.option("--reduce", "reduce_", is_flag=True,
              help="Build from the skyline only and drop implied constraints.")
@json_opt
def constraints_cmd(schema_path: str, data_path: str, superior: tuple[str, ...],
                    reduce_: bool, as_json: bool) -> None:
    """Negative constraints protecting the superior examples."""
    schema = _load_schema(schema_path)
    data = _load_data(schema, data_path)
    ids = _split_ids(superior)
    try:
        if reduce_:
            system = remove_redundant(reduce_via_skyline(schema, data, ids))
        else:
            system = build_negative(schema, data, ids)
    except (ModelError, ValueError) as exc:
        raise click.ClickException(str(exc))
    doc = system_to_json(schema, system)
    text = [
        "children({%s}) may not cover {%s}   (why: %s)"
        % (",".join(c["lhs"]), ",".join(c["rhs"]), ",".join(c["why"]))
        for c in doc
    ]
    _emit(as_json, doc, text or ["(no constraints)"])


@main.command("elicit")
@schema_opt
@data_opt
@click.option("--superior", multiple=True, required=True)
@click.option("--order", multiple=True,
              help="Attribute processing order (repeat; must cover all).")
@click.option("--flip-rule12", is_flag=True)
@click.option("--flip-rule3", is_flag=True)
@click.option("--reverse-scan", is_flag=True)
@click.option("--no-skyline-reduction", is_flag=True)
@click.option("--no-redundancy-removal", is_flag=True)
@json_opt
def elicit_cmd(schema_path: str, data_path: str, superior: tuple[str, ...],
               order: tuple[str, ...], flip_rule12: bool, flip_rule3: bool,
               reverse_scan: bool, no_skyline_reduction: bool,
               no_redundancy_removal: bool, as_json: bool) -> None:
    """Maximal relation keeping every superior example undominated."""
    schema = _load_schema(schema_path)
    data = _load_data(schema, data_path)
    config = ElicitConfig(
        attr_order=tuple(_split_ids(order)) or None,
        flip_rule12=flip_rule12,
        flip_rule3=flip_rule3,
        reverse_scan=reverse_scan,
        use_skyline_reduction=not no_skyline_reduction,
        use_redundancy_removal=not no_redundancy_removal,
    )
    try:
        rel = elicit(data, _split_ids(superior), config)
    except (ModelError, ValueError) as exc:
        raise click.ClickException(str(exc))
    ids = _ids(winnow(rel, data))
    doc = {
        "expression": rel.expression(),
        "pgraph": graph_to_json(rel.graph),
        "winnow": ids,
    }
    _emit(as_json, doc,
          [f"expression: {doc['expression']}", f"winnow: {' '.join(ids)}"])


@main.command("solve-df")
@schema_opt
@data_opt
@click.option("--superior", multiple=True, required=True)
@click.option("--inferior", multiple=True, required=True)
@click.option("--maximal", is_flag=True, help="Report all maximal solutions.")
@json_opt
def solve_df_cmd(schema_path: str, data_path: str, superior: tuple[str, ...],
                 inferior: tuple[str, ...], maximal: bool, as_json: bool) -> None:
    """Exhaustive search for a relation favoring --superior and disfavoring
    --inferior (small attribute counts only)."""
    schema = _load_schema(schema_path)
    data = _load_data(schema, data_path)
    sup, inf = _split_ids(superior), _split_ids(inferior)
    try:
        if maximal:
            rels = brute_force_opt_fdf(data, sup, inf)
        else:
            hit = brute_force_df(data, sup, inf)
            rels = [hit] if hit is not None else []
    except (ModelError, ValueError) as exc:
        raise click.ClickException(str(exc))
    if not rels:
        _emit(as_json, {"solutions": []}, ["no relation favors/disfavors as requested"])
        sys.exit(1)
    doc = {
        "solutions": [
            {
                "expression": r.expression(),
                "pgraph": graph_to_json(r.graph),
                "winnow": _ids(winnow(r, data)),
            }
            for r in rels
        ]
    }
    _emit(as_json, doc,
          [f"{s['expression']}   winnow: {' '.join(s['winnow'])}" for s in doc["solutions"]])


@main.command("gen")
@click.option("--kind", type=click.Choice(KINDS), required=True)
@click.option("--n", type=int, required=True)
@click.option("--dims", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", default="synthetic", show_default=True,
              help="Output prefix; writes <out>.schema.json and <out>.csv.")
@json_opt
def gen_cmd(kind: str, n: int, dims: int, seed: int, out: str, as_json: bool) -> None:
    """Write a synthetic dataset to disk."""
    try:
        data = generate(kind, n, dims, seed)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    schema_file = Path(f"{out}.schema.json")
    csv_file = Path(f"{out}.csv")
    schema_file.write_text(schema_to_json(data.schema) + "\n")
    csv_file.write_text(dump_dataset_csv(data))
    doc = {"schema": str(schema_file), "csv": str(csv_file), "rows": n, "dims": dims}
    _emit(as_json, doc, [f"wrote {schema_file} and {csv_file} ({n} rows)"])


@main.command("bench-accuracy")
@click.option("--kind", type=click.Choice(KINDS), default="uniform", show_default=True)
@click.option("--n", type=int, default=1000, show_default=True)
@click.option("--dims", type=int, default=6, show_default=True)
@click.option("--hidden", type=int, default=20, show_default=True,
              help="Number of random hidden relations.")
@click.option("--trials", type=int, default=1, show_default=True)
@click.option("--g-frac", "g_fracs", multiple=True, type=float,
              default=(0.1, 0.9), show_default=True,
              help="Superior sample size as a fraction of the hidden winnow.")
@click.option("--seed", type=int, default=0, show_default=True)
@json_opt
def bench_accuracy_cmd(kind: str, n: int, dims: int, hidden: int, trials: int,
                       g_fracs: tuple[float, ...], seed: int, as_json: bool) -> None:
    """How well elicitation recovers hidden relations from samples."""
    pool = generate(kind, n, dims, seed)
    sums = {f: [0.0, 0.0, 0.0, 0.0, 0.0] for f in g_fracs}
    hidden_winnows = []
    for h in range(hidden):
        rel = random_hidden_relation(pool.schema, seed * 7919 + h)
        hidden_ids = winnow(rel, pool)
        hidden_winnows.append(len(hidden_ids))
        sizes = [max(1, math.ceil(f * len(hidden_ids))) for f in g_fracs]
        reports = run_accuracy_experiment(pool, rel, sizes, trials, seed * 104729 + h)
        for f, rep in zip(g_fracs, reports):
            acc = sums[f]
            acc[0] += rep.precision
            acc[1] += rep.recall
            acc[2] += rep.f_measure
            acc[3] += rep.winnow_size_ratio
            acc[4] += rep.elapsed_s
    rows = [
        {
            "g_frac": f,
            "precision": sums[f][0] / hidden,
            "recall": sums[f][1] / hidden,
            "f_measure": sums[f][2] / hidden,
            "winnow_size_ratio": sums[f][3] / hidden,
            "elapsed_s": sums[f][4],
            "hidden_relations": hidden,
            "mean_hidden_winnow": sum(hidden_winnows) / max(len(hidden_winnows), 1),
        }
        for f in g_fracs
    ]
    text = [
        "g=%.0f%%  precision=%.3f  recall=%.3f  F=%.3f  ratio=%.3f  (%.1fs)"
        % (r["g_frac"] * 100, r["precision"], r["recall"], r["f_measure"],
           r["winnow_size_ratio"], r["elapsed_s"])
        for r in rows
    ]
    _emit(as_json, rows, text)


if __name__ == "__main__":
    main()
