"""Datalog rules integrated with ordinary Python data.

The `datalog` subpackage is the engine: parsing, stratification, and
bottom-up evaluation with a compiled join kernel when available. This
top level re-exports the engine surface plus the query/maintenance API
most callers want:

    from rulebench import infer, parse_rules

    rs = parse_rules("path(X,Y) :- edge(X,Y).\\n"
                     "path(X,Y) :- edge(X,Z), path(Z,Y).\\n")
    reachable = infer(rs, "path", edge={(1, 2), (2, 3)})

Benchmark generators, runners, and the CLI live under `bench`.
"""

from .datalog import (
    ArityConflict,
    BindingConflict,
    Database,
    DatalogError,
    DerivedWriteForbidden,
    InconsistentFunctorArity,
    Literal,
    NestedFunctor,
    NotStratifiable,
    ParseError,
    Relation,
    Rule,
    RuleSet,
    Stratification,
    UnsafeRule,
    Variable,
    WfResult,
    assert_facts,
    eval_naive,
    eval_stratified,
    eval_well_founded,
    flatten_function_symbols,
    parse_fact_file,
    parse_facts,
    parse_rules,
    retract_facts,
    stratify,
    write_facts,
)
from .integration import (
    MaintainedBinding,
    infer,
    infer_with_undefined,
    read_derived,
    register_maintained,
    update_base,
)

__version__ = "0.1.0"

__all__ = [
    "ArityConflict",
    "BindingConflict",
    "Database",
    "DatalogError",
    "DerivedWriteForbidden",
    "InconsistentFunctorArity",
    "Literal",
    "MaintainedBinding",
    "NestedFunctor",
    "NotStratifiable",
    "ParseError",
    "Relation",
    "Rule",
    "RuleSet",
    "Stratification",
    "UnsafeRule",
    "Variable",
    "WfResult",
    "assert_facts",
    "eval_naive",
    "eval_stratified",
    "eval_well_founded",
    "flatten_function_symbols",
    "infer",
    "infer_with_undefined",
    "parse_fact_file",
    "parse_facts",
    "parse_rules",
    "read_derived",
    "register_maintained",
    "retract_facts",
    "stratify",
    "update_base",
    "write_facts",
]
