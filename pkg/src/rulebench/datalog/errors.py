"""Exception types for the rule language and evaluators."""

from __future__ import annotations


class DatalogError(Exception):
    """Base class for all rule-language errors."""


class ParseError(DatalogError):
    """Syntax error with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ArityConflict(DatalogError):
    """A predicate was used at two different arities."""


class UnsafeRule(DatalogError):
    """Range-restriction or negation-safety violation."""


class NotStratifiable(DatalogError):
    """The rule set has a negation inside a dependency cycle.

    `cycle` holds one offending predicate cycle, e.g. ['win', 'win'].
    """

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(
            "negation inside dependency cycle: " + " -> ".join(self.cycle)
        )


class DerivedWriteForbidden(DatalogError):
    """Attempt to write a relation owned by a maintained binding."""


class BindingConflict(DatalogError):
    """A derived relation is already claimed by another maintained binding."""


class NestedFunctor(DatalogError):
    """Functor terms may not nest inside other functor terms."""


class InconsistentFunctorArity(ArityConflict):
    """Widening a predicate produced two different arities."""
