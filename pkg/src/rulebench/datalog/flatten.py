"""Translate function symbols away by widening the enclosing predicate.

A functor argument f(t1..tk) inside p(..., f(t1..tk), ...) is spliced in
place: the functor name becomes a constant argument followed by t1..tk,
so isa(prov(Y,X), provi) becomes isa('prov', Y, X, provi). The rewrite is
purely syntactic and must be applied to facts and queries with the same
shape.

Functors may not nest (the parser rejects that), and a functor name must
be used at one arity throughout the source.
"""

from __future__ import annotations

from .errors import InconsistentFunctorArity
from .model import Literal, Rule, RuleSet, intern_constant
from .parser import FunctorTerm, parse_rules


def _widen(lit: Literal, functor_arity: dict[str, int]) -> Literal:
    args: list = []
    for a in lit.args:
        if isinstance(a, FunctorTerm):
            seen = functor_arity.setdefault(a.name, len(a.args))
            if seen != len(a.args):
                raise InconsistentFunctorArity(
                    f"functor {a.name!r} used at arity {seen} and {len(a.args)}"
                )
            args.append(intern_constant(a.name))
            args.extend(a.args)
        else:
            args.append(a)
    return Literal(lit.pred, tuple(args), lit.negated)


def flatten_function_symbols(
    source: str, name: str = "rules", style: str = "auto"
) -> RuleSet:
    """Parse extended rule source and return the functor-free RuleSet.

    Functor-free source parses to an identical RuleSet.
    """
    found_name, raw_rules = parse_rules(source, name, style, _allow_functors=True)
    functor_arity: dict[str, int] = {}
    rules = [
        Rule(
            _widen(rule.head, functor_arity),
            tuple(_widen(lit, functor_arity) for lit in rule.body),
        )
        for rule in raw_rules
    ]
    return RuleSet.build(rules, name=found_name)
