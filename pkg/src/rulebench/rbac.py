"""Hierarchical RBAC with five interchangeable role-closure strategies.

State is four plain sets (USERS, ROLES, UR, RH) plus a strategy choice.
The strategies differ only in how the reflexive-transitive role hierarchy
is obtained:

  NonLocal    - transRH maintained in a Database by a registered binding
  AllLocal    - per-query infer over trans_role_rs (role predicate bound)
  Union       - per-query infer over trans_rs, reflexive pairs unioned in
  WhileSome   - witness loop: add one missing pair per scan
  WhileRescan - worklist recomputed from scratch after every single add
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .datalog import Database, parse_fact_file, write_facts
from .integration import MaintainedBinding, infer, register_maintained
from .loops import closure_while_rescan, closure_while_some
from .rulesets import trans_rh_rs, trans_role_rs, trans_rs


class UnknownId(Exception):
    """An operation referenced a user or role that does not exist."""


class CycleRejected(Exception):
    """AddInheritance would have made the role hierarchy cyclic."""


class Variant(Enum):
    NON_LOCAL = "NonLocal"
    ALL_LOCAL = "AllLocal"
    UNION = "Union"
    WHILE_SOME = "WhileSome"
    WHILE_RESCAN = "WhileRescan"


@dataclass
class RbacState:
    variant: Variant
    users: set = field(default_factory=set)
    roles: set = field(default_factory=set)
    ur: set = field(default_factory=set)
    rh: set = field(default_factory=set)
    db: Database | None = None
    maintained: MaintainedBinding | None = None


@dataclass(frozen=True)
class AdminOp:
    """One administrative operation; payload arity depends on kind."""

    kind: str
    payload: tuple

    KINDS = (
        "AddUser", "DeleteUser", "AddRole", "DeleteRole",
        "AssignUR", "DeassignUR", "AddInheritance", "DeleteInheritance",
        "QueryAuthorizedUsers",
    )

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown op kind {self.kind!r}")


def setup(variant: Variant | str) -> RbacState:
    variant = Variant(variant) if not isinstance(variant, Variant) else variant
    s = RbacState(variant=variant)
    if variant is Variant.NON_LOCAL:
        s.db = Database()
        s.maintained = register_maintained(s.db, trans_rh_rs())
    return s


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise UnknownId(what)


def _creates_cycle(rh: set, a, d) -> bool:
    # would (a,d) close a loop? i.e. can d already reach a
    if a == d:
        return True
    frontier = [d]
    seen = {d}
    while frontier:
        x = frontier.pop()
        for asc, desc in rh:
            if asc == x and desc not in seen:
                if desc == a:
                    return True
                seen.add(desc)
                frontier.append(desc)
    return False


def apply_admin_op(s: RbacState, op: AdminOp) -> RbacState:
    """Apply one operation in place; deletions cascade.

    Raises UnknownId when referenced users/roles do not exist and
    CycleRejected when AddInheritance would make the hierarchy cyclic.
    """
    mb = s.maintained
    kind = op.kind
    if kind == "AddUser":
        (u,) = op.payload
        s.users.add(u)
    elif kind == "DeleteUser":
        (u,) = op.payload
        _require(u in s.users, f"user {u!r}")
        s.users.discard(u)
        s.ur = {p for p in s.ur if p[0] != u}
    elif kind == "AddRole":
        (r,) = op.payload
        s.roles.add(r)
        if mb:
            mb.update_base("ROLES", add=[r])
    elif kind == "DeleteRole":
        (r,) = op.payload
        _require(r in s.roles, f"role {r!r}")
        s.roles.discard(r)
        s.ur = {p for p in s.ur if p[1] != r}
        dropped = [p for p in s.rh if r in p]
        s.rh -= set(dropped)
        if mb:
            mb.update_bases({"ROLES": ((), [r]), "RH": ((), dropped)})
    elif kind == "AssignUR":
        u, r = op.payload
        _require(u in s.users, f"user {u!r}")
        _require(r in s.roles, f"role {r!r}")
        s.ur.add((u, r))
    elif kind == "DeassignUR":
        u, r = op.payload
        _require(u in s.users, f"user {u!r}")
        _require(r in s.roles, f"role {r!r}")
        s.ur.discard((u, r))
    elif kind == "AddInheritance":
        a, d = op.payload
        _require(a in s.roles, f"role {a!r}")
        _require(d in s.roles, f"role {d!r}")
        if _creates_cycle(s.rh, a, d):
            raise CycleRejected(f"({a!r}, {d!r}) would close a hierarchy cycle")
        s.rh.add((a, d))
        if mb:
            mb.update_base("RH", add=[(a, d)])
    elif kind == "DeleteInheritance":
        a, d = op.payload
        _require(a in s.roles, f"role {a!r}")
        _require(d in s.roles, f"role {d!r}")
        s.rh.discard((a, d))
        if mb:
            mb.update_base("RH", remove=[(a, d)])
    else:  # QueryAuthorizedUsers: computed for its cost, result discarded
        (r,) = op.payload
        authorized_users(s, r)
    return s


def assigned_users(s: RbacState, role) -> set:
    _require(role in s.roles, f"role {role!r}")
    return {u for u, r in s.ur if r == role}


def trans_rh(s: RbacState) -> set:
    """Reflexive-transitive role hierarchy, by the state's strategy."""
    v = s.variant
    if v is Variant.NON_LOCAL:
        return set(s.maintained.read_derived("transRH").tuples)
    if v is Variant.ALL_LOCAL:
        return set(infer(trans_role_rs(), "path", edge=s.rh, role=s.roles).tuples)
    reflexive = {(r, r) for r in s.roles}
    if v is Variant.UNION:
        return set(infer(trans_rs(), "path", edge=s.rh).tuples) | reflexive
    if v is Variant.WHILE_SOME:
        return closure_while_some(s.rh) | reflexive
    return closure_while_rescan(s.rh) | reflexive


def authorized_users(s: RbacState, role) -> set:
    """Users holding `role` directly or through an ascendant role."""
    _require(role in s.roles, f"role {role!r}")
    closure = trans_rh(s)
    return {u for u, r in s.ur if (r, role) in closure}


def check_invariants(s: RbacState) -> list[str]:
    """Structural invariant violations, empty when the state is healthy."""
    problems = []
    for u, r in s.ur:
        if u not in s.users or r not in s.roles:
            problems.append(f"UR pair ({u!r}, {r!r}) references missing id")
    for a, d in s.rh:
        if a not in s.roles or d not in s.roles:
            problems.append(f"RH pair ({a!r}, {d!r}) references missing role")
    for a, d in s.rh:
        if _creates_cycle(s.rh - {(a, d)}, a, d) and a != d:
            problems.append(f"RH contains a cycle through ({a!r}, {d!r})")
            break
    if s.maintained is not None:
        fresh = infer(trans_rh_rs(), "transRH", RH=s.rh, ROLES=s.roles)
        have = s.maintained.read_derived("transRH").tuples
        if have != fresh.tuples:
            problems.append("maintained transRH differs from fresh inference")
    return problems


# -- fact-file state exchange ----------------------------------------------

_RELS = (("USERS", 1), ("ROLES", 1), ("UR", 2), ("RH", 2))


def export_state(s: RbacState, path: str | Path) -> None:
    db = Database()
    db.add_facts("USERS", [(u,) for u in s.users], arity=1)
    db.add_facts("ROLES", [(r,) for r in s.roles], arity=1)
    db.add_facts("UR", s.ur, arity=2)
    db.add_facts("RH", s.rh, arity=2)
    write_facts(db, path)


def import_state(path: str | Path, variant: Variant | str) -> RbacState:
    db = parse_fact_file(path)
    s = setup(variant)
    for name, arity in _RELS:
        db.ensure(name, arity)
    s.users = {u for (u,) in db.tuples("USERS")}
    s.roles = {r for (r,) in db.tuples("ROLES")}
    s.ur = set(db.tuples("UR"))
    s.rh = set(db.tuples("RH"))
    if s.maintained is not None:
        s.maintained.update_bases(
            {"ROLES": (s.roles, ()), "RH": (s.rh, ())}
        )
    return s
