"""p-skyline preference queries: winnow evaluation and elicitation from examples.

The package models tuple preferences built from per-attribute total orders
combined with prioritized (`&`) and Pareto (`*`) accumulation.  A preference
relation of this family is identified by its p-graph, a digraph on attributes
whose edges point from more important to less important attributes.  On top of
that sit winnow/skyline evaluation, the minimal-extension rule machinery, and
the constraint-driven elicitation loop that grows the skyline relation into a
maximal relation keeping user-chosen rows undominated.
"""

from .model import (
    AttrSet,
    AttributeSpec,
    Dataset,
    DataError,
    Ordering,
    Schema,
    SchemaError,
    Tuple,
    compare_values,
    dump_dataset_csv,
    load_dataset_csv,
    load_schema,
    schema_to_json,
)
from .pexpr import (
    Leaf,
    Pareto,
    ParseError,
    PExpr,
    Prior,
    expr_from_json,
    expr_to_json,
    normalize,
    parse,
    skyline_expr,
    to_text,
    vars_of,
)
from .pgraph import (
    InvalidPGraphError,
    PGraph,
    ValidationReport,
    contains,
    equals,
    from_expr,
    general_envelope_holds,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    to_expr,
    validate,
)
from .dominance import (
    PSkylineRelation,
    bet_in,
    diff,
    dominates,
    dominates_decomposition,
    dominates_semantic,
    pareto_dominates,
    sky_relation,
    skyline,
    top,
    winnow,
)
from .extension import (
    RuleApplication,
    apply_rule,
    enumerate_applications,
    extension_chain_bound,
    minimal_extensions,
    rule_new_edges,
)
from .constraints import (
    ExistenceError,
    NegConstraint,
    NegSystem,
    PosConstraint,
    build_negative,
    build_positive,
    check_new_edges,
    minimize,
    minimize_wrt,
    reduce_via_skyline,
    remove_redundant,
    satisfies,
    system_to_json,
)
from .elicitation import (
    ElicitConfig,
    PushEvent,
    brute_force_df,
    brute_force_opt_fdf,
    elicit,
    enumerate_all_pskylines,
    exists_favoring,
    push,
)
from .synth import generate, random_hidden_relation
from .experiment import ExperimentReport, run_accuracy_experiment

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
