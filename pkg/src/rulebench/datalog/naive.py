"""Deliberately naive evaluator, kept as a differential-testing oracle.

No code is shared with the compiled join plans: rules are matched by a
plain backtracking substitution search, and every round re-derives from
scratch instead of joining against a delta. Slow on purpose; its only job
is to disagree with eval_stratified when one of them is wrong.
"""

from __future__ import annotations

from .model import Database, Literal, Relation, Rule, RuleSet, Variable
from .stratify import stratify

_MISSING = object()


def _extend(env: dict, args: tuple, fact: tuple) -> dict | None:
    out = dict(env)
    for a, v in zip(args, fact):
        if isinstance(a, Variable):
            bound = out.get(a, _MISSING)
            if bound is _MISSING:
                out[a] = v
            elif bound != v:
                return None
        elif a != v:
            return None
    return out


def _ground(args: tuple, env: dict) -> tuple:
    return tuple(env[a] if isinstance(a, Variable) else a for a in args)


def _solutions(positives: list[Literal], view, env: dict, k: int = 0):
    if k == len(positives):
        yield env
        return
    lit = positives[k]
    for fact in view(lit.pred):
        env2 = _extend(env, lit.args, fact)
        if env2 is not None:
            yield from _solutions(positives, view, env2, k + 1)


def _derive(rule: Rule, view, out: set) -> None:
    positives = [l for l in rule.body if not l.negated]
    negatives = [l for l in rule.body if l.negated]
    for env in _solutions(positives, view, {}):
        if any(_ground(n.args, env) in view(n.pred) for n in negatives):
            continue
        out.add(_ground(rule.head.args, env))


def eval_naive(db: Database, rs: RuleSet) -> Database:
    """Least model of `rs` over `db` by brute-force re-derivation.

    Output contract matches eval_stratified; use that one for anything
    beyond cross-checking.
    """
    strat = stratify(rs)
    results: dict[str, set] = {p: set() for p in rs.derived_preds}

    def view(pred: str):
        if pred in results:
            return results[pred]
        return db.tuples(pred, rs.arities.get(pred))

    for stratum in strat.strata:
        rules = [r for r in rs.rules if r.head.pred in stratum]
        changed = True
        while changed:
            changed = False
            for rule in rules:
                fresh: set = set()
                _derive(rule, view, fresh)
                target = results[rule.head.pred]
                if not fresh <= target:
                    target |= fresh
                    changed = True

    out = Database()
    for pred in rs.derived_preds:
        rel = Relation(pred, rs.arities[pred])
        rel.tuples = results[pred]
        out._rels[pred] = rel
    return out
