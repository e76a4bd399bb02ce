"""Deterministic data generators for the TC and RBAC benchmarks.

The TC generator reproduces the observable contract of the classic
transitive-closure benchmark data: exactly the requested number of
distinct non-loop edges, uniform over the allowed pairs, with an acyclic
mode that only emits edges forward along a random vertex permutation. At
1000 vertices / 10,000 cyclic edges the closure saturates to the complete
graph, which the suite checks exactly.

The RBAC generator builds an initial state (leveled acyclic role
hierarchy with a controlled longest chain) and a shuffled operation
sequence with fixed update counts plus the requested number of queries.
Payloads are chosen against a simulated copy of the state, so the
sequence replays without validity errors.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path

from ..datalog import Database, Relation, parse_fact_file, parse_facts, write_facts
from ..datalog.parser import format_fact
from ..rbac import AdminOp


@dataclass(frozen=True)
class TcGenConfig:
    vertices: int
    edges: int
    cyclic: bool = True
    seed: int = 0


def gen_tc_graph(cfg: TcGenConfig) -> Relation:
    """Random edge relation over vertices 1..n, exact edge count, no loops."""
    n, m = cfg.vertices, cfg.edges
    if n < 1:
        raise ValueError("need at least one vertex")
    limit = n * (n - 1) if cfg.cyclic else n * (n - 1) // 2
    if m < 0 or m > limit:
        mode = "cyclic" if cfg.cyclic else "acyclic"
        raise ValueError(f"{m} edges infeasible for {n} {mode} vertices")
    rng = random.Random(cfg.seed)
    rel = Relation("edge", 2)
    if cfg.cyclic:
        # index k over ordered non-loop pairs: row u, then v skipping u
        for k in rng.sample(range(limit), m):
            u, r = divmod(k, n - 1)
            v = r if r < u else r + 1
            rel.tuples.add((u + 1, v + 1))
        return rel
    order = list(range(1, n + 1))
    rng.shuffle(order)
    # offsets[i] = number of (i', j') pairs with i' < i, for unranking
    offsets = [0] * n
    for i in range(1, n):
        offsets[i] = offsets[i - 1] + (n - i)
    for k in rng.sample(range(limit), m):
        i = bisect_right(offsets, k) - 1
        j = i + 1 + (k - offsets[i])
        rel.tuples.add((order[i], order[j]))
    return rel


@dataclass(frozen=True)
class RbacWorkloadConfig:
    users: int = 5000
    roles: int = 500
    ur_size: int = 5000
    rh_size: int = 550
    rh_height: int = 5
    max_roles_per_user: int = 10
    n_queries: int = 500
    seed: int = 0
    # add/del user, add/del role, add/del UR, add/del RH
    update_counts: tuple = (50, 50, 5, 5, 55, 55, 5, 5)


_UPDATE_KINDS = (
    "AddUser", "DeleteUser", "AddRole", "DeleteRole",
    "AssignUR", "DeassignUR", "AddInheritance", "DeleteInheritance",
)


def scaled_update_counts(factor: float) -> tuple:
    """Scale the default 230-update profile, largest remainder rounding."""
    base = RbacWorkloadConfig().update_counts
    target = round(sum(base) * factor)
    shares = [c * factor for c in base]
    counts = [int(s) for s in shares]
    # hand out the shortfall by descending remainder, ties in profile order
    order = sorted(range(len(base)), key=lambda i: (counts[i] - shares[i], i))
    for i in order[: target - sum(counts)]:
        counts[i] += 1
    return tuple(counts)


@dataclass
class RbacWorkload:
    users: set
    roles: set
    ur: set
    rh: set
    ops: list = field(default_factory=list)


def _leveled_hierarchy(rng, roles: list, size: int, height: int, levels: dict):
    """Acyclic RH of exactly `size` edges whose longest chain = `height`."""
    if height < 0 or (height > 0 and len(roles) < height + 1):
        raise ValueError("hierarchy height infeasible for role count")
    if height == 0:
        if size > 0:
            raise ValueError("edges require nonzero height")
        for r in roles:
            levels[r] = 0
        return set()
    if size < height:
        raise ValueError(f"{size} edges cannot realize a chain of {height}")
    shuffled = roles[:]
    rng.shuffle(shuffled)
    for i, r in enumerate(shuffled):
        levels[r] = i % (height + 1) if i > height else i
    # the first height+1 shuffled roles span levels 0..height: spine chain
    rh = {(shuffled[i], shuffled[i + 1]) for i in range(height)}
    per_level: dict[int, list] = {}
    for r in roles:
        per_level.setdefault(levels[r], []).append(r)
    for lv in per_level.values():
        lv.sort()
    attempts = 0
    while len(rh) < size:
        attempts += 1
        if attempts > 200 * size + 1000:
            raise ValueError("cannot place requested RH edges; config infeasible")
        la = rng.randrange(height)
        ld = rng.randrange(la + 1, height + 1)
        asc_pool, desc_pool = per_level.get(la), per_level.get(ld)
        if not asc_pool or not desc_pool:
            continue
        a, d = rng.choice(asc_pool), rng.choice(desc_pool)
        if a != d:
            rh.add((a, d))
    return rh


def gen_rbac_workload(cfg: RbacWorkloadConfig) -> RbacWorkload:
    rng = random.Random(cfg.seed)
    users = [f"u{i}" for i in range(cfg.users)]
    roles = [f"r{i}" for i in range(cfg.roles)]
    if cfg.ur_size > cfg.users * min(cfg.roles, cfg.max_roles_per_user):
        raise ValueError("ur_size infeasible under max_roles_per_user")

    ur: set = set()
    per_user: dict = {}
    attempts = 0
    while len(ur) < cfg.ur_size:
        attempts += 1
        if attempts > 200 * cfg.ur_size + 1000:
            raise ValueError("cannot place requested UR pairs; config infeasible")
        u, r = rng.choice(users), rng.choice(roles)
        if per_user.get(u, 0) >= cfg.max_roles_per_user or (u, r) in ur:
            continue
        ur.add((u, r))
        per_user[u] = per_user.get(u, 0) + 1

    levels: dict = {}
    rh = _leveled_hierarchy(rng, roles, cfg.rh_size, cfg.rh_height, levels)

    w = RbacWorkload(users=set(users), roles=set(roles), ur=ur, rh=rh)
    kinds = [
        k for k, count in zip(_UPDATE_KINDS, cfg.update_counts) for _ in range(count)
    ]
    kinds += ["QueryAuthorizedUsers"] * cfg.n_queries
    rng.shuffle(kinds)

    sim_users, sim_roles = set(users), set(roles)
    sim_ur, sim_rh = set(ur), set(rh)
    sim_per_user = dict(per_user)
    next_user, next_role = cfg.users, cfg.roles
    ops: list[AdminOp] = []

    def try_make(kind: str) -> AdminOp | None:
        nonlocal next_user, next_role
        if kind == "AddUser":
            u = f"u{next_user}"
            next_user += 1
            sim_users.add(u)
            return AdminOp(kind, (u,))
        if kind == "DeleteUser":
            if not sim_users:
                return None
            u = rng.choice(sorted(sim_users))
            sim_users.discard(u)
            gone = {p for p in sim_ur if p[0] == u}
            sim_ur.difference_update(gone)
            sim_per_user.pop(u, None)
            return AdminOp(kind, (u,))
        if kind == "AddRole":
            r = f"r{next_role}"
            next_role += 1
            sim_roles.add(r)
            levels[r] = rng.randrange(cfg.rh_height + 1)
            return AdminOp(kind, (r,))
        if kind == "DeleteRole":
            if not sim_roles:
                return None
            r = rng.choice(sorted(sim_roles))
            sim_roles.discard(r)
            for p in [p for p in sim_ur if p[1] == r]:
                sim_ur.discard(p)
                sim_per_user[p[0]] = sim_per_user.get(p[0], 1) - 1
            sim_rh.difference_update({p for p in sim_rh if r in p})
            return AdminOp(kind, (r,))
        if kind == "AssignUR":
            for _ in range(200):
                if not sim_users or not sim_roles:
                    return None
                u = rng.choice(sorted(sim_users))
                r = rng.choice(sorted(sim_roles))
                if (u, r) not in sim_ur and sim_per_user.get(u, 0) < cfg.max_roles_per_user:
                    sim_ur.add((u, r))
                    sim_per_user[u] = sim_per_user.get(u, 0) + 1
                    return AdminOp(kind, (u, r))
            return None
        if kind == "DeassignUR":
            if not sim_ur:
                return None
            u, r = rng.choice(sorted(sim_ur))
            sim_ur.discard((u, r))
            sim_per_user[u] = sim_per_user.get(u, 1) - 1
            return AdminOp(kind, (u, r))
        if kind == "AddInheritance":
            for _ in range(200):
                if len(sim_roles) < 2:
                    return None
                a, d = rng.sample(sorted(sim_roles), 2)
                if levels.get(a, 0) < levels.get(d, 0) and (a, d) not in sim_rh:
                    sim_rh.add((a, d))
                    return AdminOp(kind, (a, d))
            return None
        if kind == "DeleteInheritance":
            if not sim_rh:
                return None
            a, d = rng.choice(sorted(sim_rh))
            sim_rh.discard((a, d))
            return AdminOp(kind, (a, d))
        # QueryAuthorizedUsers
        if not sim_roles:
            return None
        return AdminOp(kind, (rng.choice(sorted(sim_roles)),))

    deferred: list[str] = []
    for kind in kinds:
        op = try_make(kind)
        if op is None:
            deferred.append(kind)
        else:
            ops.append(op)
    # infeasible-at-their-slot ops retry after the rest has run
    for round_ in range(3):
        still = []
        for kind in deferred:
            op = try_make(kind)
            if op is None:
                still.append(kind)
            else:
                ops.append(op)
        deferred = still
        if not deferred:
            break
    if deferred:
        raise ValueError(f"workload infeasible; could not place {deferred}")
    w.ops = ops
    return w


# -- workload files --------------------------------------------------------
#
# A generated workload lives in a directory as state.facts (USERS/ROLES/
# UR/RH, unordered) and ops.facts, one op per line in execution order.

STATE_FILE = "state.facts"
OPS_FILE = "ops.facts"


def write_workload(wl: RbacWorkload, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    db = Database()
    db.add_facts("USERS", [(u,) for u in wl.users], arity=1)
    db.add_facts("ROLES", [(r,) for r in wl.roles], arity=1)
    db.add_facts("UR", wl.ur, arity=2)
    db.add_facts("RH", wl.rh, arity=2)
    write_facts(db, directory / STATE_FILE)
    with open(directory / OPS_FILE, "w", encoding="utf-8") as fh:
        for op in wl.ops:
            fh.write(format_fact(op.kind, op.payload) + "\n")


def read_workload(directory) -> RbacWorkload:
    directory = Path(directory)
    state = parse_fact_file(directory / STATE_FILE)
    for name, arity in (("USERS", 1), ("ROLES", 1), ("UR", 2), ("RH", 2)):
        state.ensure(name, arity)
    ops = []
    for line in (directory / OPS_FILE).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        # one fact per line; a throwaway parse keeps the op order
        db = parse_facts(line)
        ((name, tuples),) = ((n, db.tuples(n)) for n in db.names())
        (payload,) = tuples
        ops.append(AdminOp(name, payload))
    return RbacWorkload(
        users={u for (u,) in state.tuples("USERS")},
        roles={r for (r,) in state.tuples("ROLES")},
        ur=set(state.tuples("UR")),
        rh=set(state.tuples("RH")),
        ops=ops,
    )
