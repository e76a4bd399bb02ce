"""Calling rules from code: one-shot `infer` and maintained bindings.

`infer` evaluates a rule set against relations passed in by name, like a
query call. A MaintainedBinding instead wires a rule set into a Database
permanently: its derived relations live in the database, are re-derived
whenever a bound base relation changes, and are write-protected against
everyone but the maintenance machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .datalog import Database, Relation, RuleSet, eval_stratified, eval_well_founded
from .datalog.errors import DerivedWriteForbidden


def _as_tuples(value) -> Iterable[tuple]:
    # accept relations, tuple sets, or bare-scalar sets (role={r1})
    if isinstance(value, Relation):
        return value.tuples
    return [t if isinstance(t, tuple) else (t,) for t in value]


def _binding_db(rs: RuleSet, bindings: Mapping[str, Iterable]) -> Database:
    db = Database()
    for name, value in bindings.items():
        if name not in rs.base_preds:
            raise ValueError(
                f"{name!r} is not a base predicate of rule set {rs.name!r}"
            )
        db.add_facts(name, _as_tuples(value), arity=rs.arities[name])
    return db


def _check_queries(rs: RuleSet, queries: Sequence[str]) -> None:
    for q in queries:
        if q not in rs.derived_preds:
            raise ValueError(
                f"{q!r} is not a derived predicate of rule set {rs.name!r}"
            )


def infer(
    rs: RuleSet,
    queries: str | Sequence[str],
    bindings: Mapping[str, Iterable] | None = None,
    *,
    semantics: str = "stratified",
    kernel: str | None = None,
    **named_bindings,
):
    """Evaluate `rs` over the given base relations and return the queries.

    A single query name returns one Relation; a sequence returns a list in
    query order. Unbound base predicates are empty. Under
    semantics="well-founded" the returned extensions are the facts that are
    definitely true; use infer_with_undefined to see the undefined ones.
    """
    single = isinstance(queries, str)
    names = [queries] if single else list(queries)
    _check_queries(rs, names)
    db = _binding_db(rs, {**(bindings or {}), **named_bindings})
    if semantics == "stratified":
        out = eval_stratified(db, rs, kernel=kernel)
    elif semantics == "well-founded":
        out = eval_well_founded(db, rs, kernel=kernel).true_facts
    else:
        raise ValueError(f"unknown semantics {semantics!r}")
    rels = [out.get(q, rs.arities[q]) for q in names]
    return rels[0] if single else rels


def infer_with_undefined(
    rs: RuleSet,
    queries: str | Sequence[str],
    bindings: Mapping[str, Iterable] | None = None,
    *,
    kernel: str | None = None,
    **named_bindings,
):
    """Well-founded infer returning (true, undefined) Relation pairs."""
    single = isinstance(queries, str)
    names = [queries] if single else list(queries)
    _check_queries(rs, names)
    db = _binding_db(rs, {**(bindings or {}), **named_bindings})
    wf = eval_well_founded(db, rs, kernel=kernel)
    pairs = [
        (wf.true_facts.get(q, rs.arities[q]), wf.undefined_facts.get(q, rs.arities[q]))
        for q in names
    ]
    return pairs[0] if single else pairs


@dataclass
class MaintainedBinding:
    """A rule set whose derived relations live inside a Database.

    `base_map`/`derived_map` translate rule-set predicate names to database
    relation names. While registered, the derived relations reject direct
    writes; updates must go through update_base, which restores the
    derived relations before returning (or, in lazy mode, marks them dirty
    and restores on the next read).
    """

    rs: RuleSet
    db: Database
    base_map: dict[str, str]
    derived_map: dict[str, str]
    lazy: bool = False
    kernel: str | None = None
    dirty: bool = field(default=False, init=False)

    def _rederive(self) -> None:
        view = Database()
        for pred, db_name in self.base_map.items():
            rel = self.db.get(db_name)
            if rel is not None:
                view._rels[pred] = rel
        out = eval_stratified(view, self.rs, kernel=self.kernel)
        for pred, db_name in self.derived_map.items():
            self.db._force_write(db_name, self.rs.arities[pred], out.tuples(pred))
        self.dirty = False

    def update_base(self, name: str, add: Iterable = (), remove: Iterable = ()) -> None:
        self.update_bases({name: (add, remove)})

    def update_bases(self, changes: Mapping[str, tuple[Iterable, Iterable]]) -> None:
        """Apply several base updates with a single re-derivation.

        Per relation, removals apply before additions. Updates that change
        nothing do not trigger re-derivation.
        """
        effective = False
        for name, (add, remove) in changes.items():
            if name in self.derived_map:
                raise DerivedWriteForbidden(
                    f"{name!r} is a derived predicate of {self.rs.name!r}"
                )
            db_name = self.base_map.get(name)
            if db_name is None:
                raise ValueError(f"{name!r} is not a bound base predicate")
            rel = self.db.ensure(db_name, self.rs.arities[name])
            removed = [
                t
                for t in (t if isinstance(t, tuple) else (t,) for t in remove)
                if t in rel
            ]
            if removed:
                self.db.remove_facts(db_name, removed)
                effective = True
            added = [
                t
                for t in (t if isinstance(t, tuple) else (t,) for t in add)
                if t not in rel
            ]
            if added:
                self.db.add_facts(db_name, added)
                effective = True
        if not effective:
            return
        if self.lazy:
            self.dirty = True
        else:
            self._rederive()

    def read_derived(self, name: str) -> Relation:
        db_name = self.derived_map.get(name)
        if db_name is None:
            raise ValueError(f"{name!r} is not a maintained derived predicate")
        if self.dirty:
            self._rederive()
        return self.db.get(db_name, self.rs.arities[name])

    def refresh(self) -> None:
        self._rederive()

    def close(self) -> None:
        """Release write protection; the derived relations become ordinary."""
        for db_name in self.derived_map.values():
            self.db.release(db_name, self)


def register_maintained(
    db: Database,
    rs: RuleSet,
    base_map: Mapping[str, str] | None = None,
    derived_map: Mapping[str, str] | None = None,
    *,
    lazy: bool = False,
    kernel: str | None = None,
) -> MaintainedBinding:
    """Bind `rs` into `db` and derive its relations for the first time.

    Maps default to identity over all base / derived predicates. Raises
    BindingConflict if another binding already maintains a target relation.
    """
    base_map = dict(base_map) if base_map else {p: p for p in rs.base_preds}
    derived_map = (
        dict(derived_map) if derived_map else {p: p for p in rs.derived_preds}
    )
    for pred in base_map:
        if pred not in rs.base_preds:
            raise ValueError(f"{pred!r} is not a base predicate of {rs.name!r}")
    for pred in derived_map:
        if pred not in rs.derived_preds:
            raise ValueError(f"{pred!r} is not a derived predicate of {rs.name!r}")

    mb = MaintainedBinding(
        rs=rs, db=db, base_map=dict(base_map), derived_map=dict(derived_map),
        lazy=lazy, kernel=kernel,
    )
    for pred, db_name in base_map.items():
        db.ensure(db_name, rs.arities[pred])
    claimed = []
    try:
        for pred, db_name in derived_map.items():
            db.ensure(db_name, rs.arities[pred])
            db.claim(db_name, mb)
            claimed.append(db_name)
    except Exception:
        for db_name in claimed:
            db.release(db_name, mb)
        raise
    mb._rederive()
    return mb


def update_base(
    mb: MaintainedBinding, name: str, add: Iterable = (), remove: Iterable = ()
) -> None:
    mb.update_base(name, add, remove)


def read_derived(mb: MaintainedBinding, name: str) -> Relation:
    return mb.read_derived(name)
