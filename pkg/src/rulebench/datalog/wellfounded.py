"""Well-founded model via the alternating fixpoint.

One application of Gamma computes the least model with all negation
frozen against a candidate set J: `not p(..)` tests J when p is derived
and the database when p is base. Gamma is antitone, so Gamma∘Gamma is
monotone; iterating U <- Gamma(Gamma(U)) from the empty set climbs to the
set of well-founded true facts, and Gamma(U) is the matching overestimate.
Facts in the gap are undefined.

Each Gamma run reuses the semi-naive machinery with every derived
predicate in a single stratum, which is sound because the frozen negation
makes the program effectively negation-free.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernel as _kernel_mod
from .engine import plans_for, run_stratum
from .model import Database, Relation, RuleSet


@dataclass(frozen=True)
class WfResult:
    """Three-valued outcome: anything in neither database is false."""

    true_facts: Database
    undefined_facts: Database


def _gamma(db: Database, rs: RuleSet, plans, frozen: dict[str, set], execute):
    totals: dict[str, set] = {p: set() for p in rs.derived_preds}

    def fixed_tuples(pred: str):
        return db.tuples(pred, rs.arities.get(pred))

    def neg_tuples(pred: str):
        if pred in totals:
            return frozen.get(pred, set())
        return db.tuples(pred, rs.arities.get(pred))

    run_stratum(plans, rs.derived_preds, totals, fixed_tuples, neg_tuples, execute)
    return totals


def eval_well_founded(db: Database, rs: RuleSet, kernel: str | None = None) -> WfResult:
    execute = _kernel_mod.get_kernel(kernel)
    plans = plans_for(rs)

    under: dict[str, set] = {p: set() for p in rs.derived_preds}
    while True:
        over = _gamma(db, rs, plans, under, execute)
        nxt = _gamma(db, rs, plans, over, execute)
        if nxt == under:
            break
        under = nxt

    true_db = Database()
    undef_db = Database()
    for pred in sorted(rs.derived_preds):
        arity = rs.arities[pred]
        t = Relation(pred, arity)
        t.tuples = under[pred]
        true_db._rels[pred] = t
        u = Relation(pred, arity)
        u.tuples = over[pred] - under[pred]
        undef_db._rels[pred] = u
    return WfResult(true_facts=true_db, undefined_facts=undef_db)
