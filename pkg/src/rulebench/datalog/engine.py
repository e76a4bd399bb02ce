"""Semi-naive bottom-up evaluation.

Rules are compiled once per rule set into join plans executed by the
selected kernel. Literals join left-to-right in written order; hash
indexes are built on demand per (predicate, bound-position set). Negated
literals are evaluated at the earliest point where all their variables are
bound, which the safety check guarantees exists.

Each stratum runs a delta loop: every round re-joins each rule once per
same-stratum positive literal, with that literal reading the previous
round's delta and every other literal reading the full accumulated total.
"""

from __future__ import annotations

from dataclasses import dataclass
from weakref import WeakKeyDictionary

from . import kernel as _kernel_mod
from .model import Database, Literal, Relation, Rule, RuleSet, Variable
from .stratify import Stratification, stratify


@dataclass(frozen=True)
class PlanStep:
    pred: str
    negated: bool
    body_index: int
    key_positions: tuple[int, ...]
    op: tuple  # kernel 5-tuple: (negated, key_ops, out_ops, checks, neg_ops)


@dataclass(frozen=True)
class Plan:
    rule: Rule
    nvars: int
    steps: tuple[PlanStep, ...]
    kernel_steps: tuple[tuple, ...]
    head_pred: str
    head_ops: tuple[tuple[int, object], ...]  # (0, const) | (1, slot) | (2, tup pos)


def compile_plan(rule: Rule) -> Plan:
    ordered: list[tuple[Literal, int]] = []
    pending: list[tuple[Literal, int]] = []
    bound: set[Variable] = set()

    def flush_pending() -> None:
        still = []
        for lit, idx in pending:
            if all(v in bound for v in lit.variables()):
                ordered.append((lit, idx))
            else:
                still.append((lit, idx))
        pending[:] = still

    flush_pending()
    for idx, lit in enumerate(rule.body):
        if lit.negated:
            pending.append((lit, idx))
        else:
            ordered.append((lit, idx))
            bound.update(lit.variables())
        flush_pending()
    if pending:  # unreachable for validated rule sets
        raise AssertionError(f"unbound negated literal in {rule}")

    slots: dict[Variable, int] = {}
    steps: list[PlanStep] = []
    for lit, idx in ordered:
        if lit.negated:
            neg_ops = tuple(
                (1, slots[a]) if isinstance(a, Variable) else (0, a)
                for a in lit.args
            )
            op = (True, (), (), (), neg_ops)
            steps.append(
                PlanStep(lit.pred, True, idx, tuple(range(len(lit.args))), op)
            )
            continue
        key_positions: list[int] = []
        key_ops: list[tuple[int, object]] = []
        out_ops: list[tuple[int, int]] = []
        checks: list[tuple[int, int]] = []
        first_occurrence: dict[Variable, int] = {}
        for pos, a in enumerate(lit.args):
            if not isinstance(a, Variable):
                key_positions.append(pos)
                key_ops.append((0, a))
            elif a in first_occurrence:
                # repeated within this literal: equality on the tuple itself
                checks.append((pos, first_occurrence[a]))
            elif a in slots:
                key_positions.append(pos)
                key_ops.append((1, slots[a]))
            else:
                first_occurrence[a] = pos
                slot = slots[a] = len(slots)
                out_ops.append((pos, slot))
        op = (False, tuple(key_ops), tuple(out_ops), tuple(checks), ())
        steps.append(PlanStep(lit.pred, False, idx, tuple(key_positions), op))
        # Variables introduced here are bound for every later step, and for
        # the head template below, via `slots`.
        del first_occurrence

    final_binds: dict[Variable, int] = {}
    if steps and not steps[-1].negated:
        lit, _ = ordered[-1]
        seen: dict[Variable, int] = {}
        for pos, a in enumerate(lit.args):
            if isinstance(a, Variable) and a not in seen:
                seen[a] = pos
        bound_before = set()
        for st in steps[:-1]:
            body_lit = next(
                l for l, i in ordered if i == st.body_index
            )
            if not st.negated:
                bound_before.update(body_lit.variables())
        final_binds = {v: p for v, p in seen.items() if v not in bound_before}

    head_ops: list[tuple[int, object]] = []
    for a in rule.head.args:
        if not isinstance(a, Variable):
            head_ops.append((0, a))
        elif a in final_binds:
            head_ops.append((2, final_binds[a]))
        else:
            head_ops.append((1, slots[a]))

    return Plan(
        rule=rule,
        nvars=len(slots),
        steps=tuple(steps),
        kernel_steps=tuple(st.op for st in steps),
        head_pred=rule.head.pred,
        head_ops=tuple(head_ops),
    )


_plan_cache: "WeakKeyDictionary[RuleSet, tuple[Plan, ...]]" = WeakKeyDictionary()


def plans_for(rs: RuleSet) -> tuple[Plan, ...]:
    plans = _plan_cache.get(rs)
    if plans is None:
        plans = tuple(compile_plan(r) for r in rs.rules)
        _plan_cache[rs] = plans
    return plans


# -- indexes ---------------------------------------------------------------


def build_index(tuples, positions: tuple[int, ...]) -> dict:
    if not positions:
        return {(): list(tuples)}
    idx: dict = {}
    setdefault = idx.setdefault
    for t in tuples:
        setdefault(tuple(t[p] for p in positions), []).append(t)
    return idx


class _GrowingIndex:
    """Index over an append-only tuple list, extended on demand."""

    __slots__ = ("positions", "backing", "consumed", "idx")

    def __init__(self, positions: tuple[int, ...], backing: list):
        self.positions = positions
        self.backing = backing
        self.consumed = 0
        self.idx: dict = {} if positions else {(): backing}

    def current(self) -> dict:
        if not self.positions:
            return self.idx
        backing = self.backing
        if self.consumed < len(backing):
            positions = self.positions
            setdefault = self.idx.setdefault
            for t in backing[self.consumed :]:
                setdefault(tuple(t[p] for p in positions), []).append(t)
            self.consumed = len(backing)
        return self.idx


class _StratumSources:
    """Resolves plan-step sources for one stratum's delta loop."""

    def __init__(self, stratum_preds, totals, total_lists, fixed_tuples, neg_tuples):
        self.stratum_preds = stratum_preds
        self.totals = totals
        self.total_lists = total_lists
        self.fixed_tuples = fixed_tuples  # pred -> set, positives below stratum
        self.neg_tuples = neg_tuples  # pred -> set, negated literals
        self._fixed_idx: dict[tuple[str, tuple[int, ...]], dict] = {}
        self._growing: dict[tuple[str, tuple[int, ...]], _GrowingIndex] = {}

    def positive(self, step: PlanStep, delta_index: dict | None) -> dict:
        if delta_index is not None:
            return delta_index
        key = (step.pred, step.key_positions)
        if step.pred in self.stratum_preds:
            gi = self._growing.get(key)
            if gi is None:
                gi = self._growing[key] = _GrowingIndex(
                    step.key_positions, self.total_lists[step.pred]
                )
            return gi.current()
        idx = self._fixed_idx.get(key)
        if idx is None:
            idx = self._fixed_idx[key] = build_index(
                self.fixed_tuples(step.pred), step.key_positions
            )
        return idx


def run_stratum(
    rules_plans,
    stratum_preds: frozenset[str],
    totals: dict[str, set],
    fixed_tuples,
    neg_tuples,
    execute,
) -> None:
    """Saturate one stratum in place: totals[p] grows to the fixpoint."""
    total_lists = {p: list(totals[p]) for p in stratum_preds}
    sources = _StratumSources(
        stratum_preds, totals, total_lists, fixed_tuples, neg_tuples
    )

    def run_plan(plan: Plan, delta_step: int | None, delta_index, out: dict):
        step_sources = []
        for si, step in enumerate(plan.steps):
            if step.negated:
                step_sources.append(neg_tuples(step.pred))
            else:
                step_sources.append(
                    sources.positive(step, delta_index if si == delta_step else None)
                )
        execute(
            plan.nvars,
            plan.kernel_steps,
            step_sources,
            plan.head_ops,
            totals[plan.head_pred],
            out.setdefault(plan.head_pred, set()),
        )

    # round 0: every rule once, recursive literals over the (empty) totals
    delta: dict[str, set] = {}
    for plan in rules_plans:
        run_plan(plan, None, None, delta)
    _absorb(delta, totals, total_lists)

    recursive = [
        (plan, [si for si, st in enumerate(plan.steps)
                if not st.negated and st.pred in stratum_preds])
        for plan in rules_plans
    ]
    while any(delta.values()):
        new: dict[str, set] = {}
        for plan, delta_steps in recursive:
            for si in delta_steps:
                step = plan.steps[si]
                dset = delta.get(step.pred)
                if not dset:
                    continue
                run_plan(plan, si, build_index(dset, step.key_positions), new)
        _absorb(new, totals, total_lists)
        delta = new


def _absorb(delta: dict[str, set], totals, total_lists) -> None:
    for p, new_tuples in delta.items():
        if new_tuples:
            totals[p] |= new_tuples
            total_lists[p].extend(new_tuples)


# -- public evaluators -----------------------------------------------------


def eval_stratified(
    db: Database,
    rs: RuleSet,
    kernel: str | None = None,
    stratification: Stratification | None = None,
) -> Database:
    """Least model of `rs` over `db`, restricted to derived predicates.

    The input database is only read; missing base relations are empty.
    """
    execute = _kernel_mod.get_kernel(kernel)
    strat = stratification if stratification is not None else stratify(rs)
    plans = plans_for(rs)
    results: dict[str, set] = {}

    for stratum in strat.strata:
        stratum_plans = [p for p in plans if p.head_pred in stratum]
        totals = {p: results.setdefault(p, set()) for p in stratum}

        def fixed_tuples(pred: str, _results=results, _stratum=stratum):
            if pred in _results and pred not in _stratum:
                return _results[pred]
            return db.tuples(pred, rs.arities.get(pred))

        run_stratum(
            stratum_plans, stratum, totals, fixed_tuples, fixed_tuples, execute
        )

    out = Database()
    for pred in rs.derived_preds:
        rel = Relation(pred, rs.arities[pred])
        rel.tuples = results.get(pred, set())
        out._rels[pred] = rel
    return out
