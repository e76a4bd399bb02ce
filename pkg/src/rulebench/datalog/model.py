"""Core data model: constants, literals, rules, relations, databases.

Constants are plain Python values (`int` or interned `str`), so tuples of
them hash and compare at native speed inside the join loops. Variables are a
tiny wrapper class, which keeps them unambiguous against string constants.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    ArityConflict,
    BindingConflict,
    DatalogError,
    DerivedWriteForbidden,
    UnsafeRule,
)

Constant = int | str


def intern_constant(value: Constant) -> Constant:
    """Normalize a constant: symbols are interned, integers pass through."""
    if isinstance(value, str):
        return sys.intern(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise TypeError(f"constant must be int or str, got {type(value).__name__}")


def constant_sort_key(value: Constant):
    """Total order over constants: integers first, then symbols by text."""
    if isinstance(value, str):
        return (1, value)
    return (0, value)


def tuple_sort_key(t: tuple) -> tuple:
    return tuple(constant_sort_key(v) for v in t)


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"


Term = Constant | Variable


@dataclass(frozen=True, slots=True)
class Literal:
    pred: str
    args: tuple[Term, ...]
    negated: bool = False

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> Iterator[Variable]:
        for a in self.args:
            if isinstance(a, Variable):
                yield a

    def __str__(self) -> str:
        inner = ", ".join(
            a.name if isinstance(a, Variable) else repr(a) for a in self.args
        )
        atom = f"{self.pred}({inner})" if self.args else self.pred
        return f"not {atom}" if self.negated else atom


@dataclass(frozen=True, slots=True)
class Rule:
    head: Literal
    body: tuple[Literal, ...] = ()

    def is_fact(self) -> bool:
        return not self.body

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class RuleSet:
    """A validated collection of rules.

    `derived_preds` are the predicates appearing in some head; every other
    predicate mentioned is a base predicate whose extension comes from the
    database. Validation enforces one arity per predicate, range
    restriction, and negation safety.
    """

    name: str
    rules: tuple[Rule, ...]
    base_preds: frozenset[str]
    derived_preds: frozenset[str]
    arities: dict[str, int] = field(compare=False)

    @staticmethod
    def build(rules: Iterable[Rule], name: str = "rules") -> "RuleSet":
        rules = tuple(rules)
        arities: dict[str, int] = {}

        def note_arity(lit: Literal) -> None:
            seen = arities.get(lit.pred)
            if seen is None:
                arities[lit.pred] = lit.arity
            elif seen != lit.arity:
                raise ArityConflict(
                    f"predicate {lit.pred!r} used at arity {seen} and {lit.arity}"
                )

        derived = set()
        for rule in rules:
            if rule.head.negated:
                raise DatalogError(f"negated head in {rule}")
            note_arity(rule.head)
            derived.add(rule.head.pred)
            for lit in rule.body:
                note_arity(lit)

        for rule in rules:
            positive_vars = {
                v for lit in rule.body if not lit.negated for v in lit.variables()
            }
            for v in rule.head.variables():
                if v not in positive_vars:
                    raise UnsafeRule(
                        f"head variable {v.name} of {rule} not bound by a "
                        "positive body literal"
                    )
            for lit in rule.body:
                if lit.negated:
                    for v in lit.variables():
                        if v not in positive_vars:
                            raise UnsafeRule(
                                f"variable {v.name} in negated literal of {rule} "
                                "not bound by a positive body literal"
                            )

        base = {p for p in arities if p not in derived}
        return RuleSet(
            name=name,
            rules=rules,
            base_preds=frozenset(base),
            derived_preds=frozenset(derived),
            arities=arities,
        )

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rules)


class Relation:
    """A named set of constant tuples with a fixed arity."""

    __slots__ = ("name", "arity", "tuples")

    def __init__(self, name: str, arity: int, tuples: Iterable[tuple] = ()):
        self.name = name
        self.arity = arity
        self.tuples: set[tuple] = set()
        self.add(tuples)

    def add(self, tuples: Iterable[tuple]) -> None:
        for t in tuples:
            t = tuple(intern_constant(v) for v in t)
            if len(t) != self.arity:
                raise ArityConflict(
                    f"tuple {t} has arity {len(t)}, relation {self.name!r} "
                    f"has arity {self.arity}"
                )
            self.tuples.add(t)

    def discard(self, tuples: Iterable[tuple]) -> None:
        self.tuples.difference_update(tuple(t) for t in tuples)

    def sorted(self) -> list[tuple]:
        return sorted(self.tuples, key=tuple_sort_key)

    def copy(self) -> "Relation":
        r = Relation(self.name, self.arity)
        r.tuples = set(self.tuples)
        return r

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.tuples)

    def __contains__(self, t: tuple) -> bool:
        return t in self.tuples

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return (
            self.name == other.name
            and self.arity == other.arity
            and self.tuples == other.tuples
        )

    def __repr__(self) -> str:
        return f"Relation({self.name!r}/{self.arity}, {len(self.tuples)} tuples)"


class Database:
    """Named relations, one arity per name.

    Mutation goes through `add_facts`/`remove_facts` (or the module-level
    assert/retract helpers), which honor write claims placed on maintained
    derived relations.
    """

    def __init__(self) -> None:
        self._rels: dict[str, Relation] = {}
        self._claims: dict[str, object] = {}

    # -- lookup --------------------------------------------------------

    def get(self, name: str, arity: int | None = None) -> Relation | None:
        rel = self._rels.get(name)
        if rel is not None and arity is not None and rel.arity != arity:
            raise ArityConflict(
                f"relation {name!r} has arity {rel.arity}, requested {arity}"
            )
        return rel

    def tuples(self, name: str, arity: int | None = None) -> set[tuple]:
        rel = self.get(name, arity)
        return rel.tuples if rel is not None else set()

    def ensure(self, name: str, arity: int) -> Relation:
        rel = self._rels.get(name)
        if rel is None:
            rel = Relation(name, arity)
            self._rels[name] = rel
        elif rel.arity != arity:
            raise ArityConflict(
                f"relation {name!r} exists at arity {rel.arity}, not {arity}"
            )
        return rel

    def names(self) -> list[str]:
        return sorted(self._rels)

    def __contains__(self, name: str) -> bool:
        return name in self._rels

    def __iter__(self) -> Iterator[Relation]:
        return iter(self._rels.values())

    # -- mutation ------------------------------------------------------

    def add_facts(self, name: str, tuples: Iterable[tuple], arity: int | None = None) -> None:
        self._check_writable(name)
        tuples = [tuple(t) for t in tuples]
        if name not in self._rels:
            if not tuples and arity is None:
                return
            self.ensure(name, len(tuples[0]) if arity is None else arity)
        self._rels[name].add(tuples)

    def remove_facts(self, name: str, tuples: Iterable[tuple]) -> None:
        self._check_writable(name)
        rel = self._rels.get(name)
        if rel is not None:
            rel.discard(tuples)

    def drop(self, name: str) -> None:
        self._check_writable(name)
        self._rels.pop(name, None)

    # -- write claims (maintained derived relations) -------------------

    def claim(self, name: str, owner: object) -> None:
        current = self._claims.get(name)
        if current is not None and current is not owner:
            raise BindingConflict(
                f"relation {name!r} already claimed by another binding"
            )
        self._claims[name] = owner

    def release(self, name: str, owner: object) -> None:
        if self._claims.get(name) is owner:
            del self._claims[name]

    def claimed_by(self, name: str):
        return self._claims.get(name)

    def _check_writable(self, name: str) -> None:
        if name in self._claims:
            raise DerivedWriteForbidden(
                f"relation {name!r} is maintained by a registered binding"
            )

    def _force_write(self, name: str, arity: int, tuples: set[tuple]) -> None:
        """Maintenance-machinery writer; bypasses the claim check.

        Adopts `tuples` when it is a set the caller relinquishes; contents
        must already be interned (true for evaluation output).
        """
        rel = self._rels.get(name)
        if rel is None:
            rel = Relation(name, arity)
            self._rels[name] = rel
        elif rel.arity != arity:
            raise ArityConflict(
                f"relation {name!r} exists at arity {rel.arity}, not {arity}"
            )
        rel.tuples = tuples if isinstance(tuples, set) else set(tuples)

    # -- misc ----------------------------------------------------------

    def copy(self) -> "Database":
        db = Database()
        for name, rel in self._rels.items():
            db._rels[name] = rel.copy()
        return db

    def as_dict(self) -> dict[str, frozenset]:
        return {name: frozenset(rel.tuples) for name, rel in self._rels.items()}

    def __eq__(self, other) -> bool:
        # empty relations are not significant: a database is its facts,
        # and fact-file round-trips drop declared-but-empty relations
        if not isinstance(other, Database):
            return NotImplemented
        mine = {n: r.tuples for n, r in self._rels.items() if r.tuples}
        theirs = {n: r.tuples for n, r in other._rels.items() if r.tuples}
        return mine == theirs

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{r.name}/{r.arity}:{len(r)}" for r in self._rels.values()
        )
        return f"Database({parts})"


def assert_facts(db: Database, name: str, tuples: Iterable[tuple]) -> Database:
    """Add tuples to the named relation (creating it if needed)."""
    db.add_facts(name, tuples)
    return db


def retract_facts(db: Database, name: str, tuples: Iterable[tuple]) -> Database:
    """Remove tuples from the named relation; absent tuples are ignored."""
    db.remove_facts(name, tuples)
    return db
