"""In-memory Datalog: parsing, stratification, and bottom-up evaluation."""

from .errors import (
    ArityConflict,
    BindingConflict,
    DatalogError,
    DerivedWriteForbidden,
    InconsistentFunctorArity,
    NestedFunctor,
    NotStratifiable,
    ParseError,
    UnsafeRule,
)
from .model import (
    Database,
    Literal,
    Relation,
    Rule,
    RuleSet,
    Variable,
    assert_facts,
    retract_facts,
)
from .parser import (
    parse_fact_file,
    parse_facts,
    parse_rules,
    write_facts,
)
from .stratify import Stratification, stratify
from .engine import eval_stratified
from .naive import eval_naive
from .wellfounded import WfResult, eval_well_founded
from .flatten import flatten_function_symbols

__all__ = [
    "ArityConflict",
    "BindingConflict",
    "DatalogError",
    "Database",
    "DerivedWriteForbidden",
    "InconsistentFunctorArity",
    "Literal",
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
    "parse_fact_file",
    "parse_facts",
    "parse_rules",
    "retract_facts",
    "stratify",
    "write_facts",
]
