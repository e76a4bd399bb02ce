"""Benchmark runners: generate, evaluate, time, cross-check.

Every runner returns (records, result_size) with phases from
timing.PHASES. Result sets are compared across strategies after timing;
disagreement raises VariantMismatch rather than producing quiet numbers
for wrong answers.
"""

from __future__ import annotations

from pathlib import Path

from ..datalog import parse_fact_file
from ..integration import infer
from ..loops import closure_while_rescan, closure_while_some
from ..rbac import RbacState, apply_admin_op, authorized_users, setup, trans_rh
from ..rulesets import trans_rev_rs, trans_rs
from .cache import CACHE_SUFFIX, load_cache, write_cache
from .generators import RbacWorkloadConfig, TcGenConfig, gen_rbac_workload, gen_tc_graph
from .timing import DEFAULT_REPEATS, records_from_means, timed_runs

TC_VARIANTS = ("TC", "TCrev", "WhileSome", "WhileRescan")

RBAC_VARIANTS = ("NonLocal", "AllLocal", "Union", "WhileSome", "WhileRescan")


class VariantMismatch(Exception):
    """Two strategies for the same problem returned different results."""


# -- transitive closure ----------------------------------------------------


def _tc_once(variant: str, cfg: TcGenConfig, kernel):
    def run(clock):
        with clock.phase("prepare"):
            edges = gen_tc_graph(cfg)
            pairs = set(edges.tuples) if variant.startswith("While") else None
        with clock.phase("eval"):
            if variant == "TC":
                rel = infer(trans_rs(), "path", edge=edges, kernel=kernel)
            elif variant == "TCrev":
                rel = infer(trans_rev_rs(), "path", edge=edges, kernel=kernel)
            elif variant == "WhileSome":
                rel = closure_while_some(pairs)
            else:
                rel = closure_while_rescan(pairs)
        with clock.phase("collect"):
            result = frozenset(rel if isinstance(rel, (set, frozenset)) else rel.tuples)
        return edges, result

    return run


def run_tc_benchmark(
    variant: str, cfg: TcGenConfig, repeats: int = DEFAULT_REPEATS, kernel=None
):
    if variant not in TC_VARIANTS:
        raise ValueError(f"unknown TC variant {variant!r}")
    means, (edges, result) = timed_runs(_tc_once(variant, cfg, kernel), repeats)
    if variant != "TC":
        expected = frozenset(infer(trans_rs(), "path", edge=edges, kernel=kernel).tuples)
        if result != expected:
            raise VariantMismatch(
                f"{variant} closure has {len(result)} pairs, TC has {len(expected)}"
            )
    size_param = f"{cfg.vertices}:{cfg.edges}"
    records = records_from_means(
        "tc", variant, size_param, means, repeats, len(result), cfg.seed
    )
    return records, len(result)


# -- RBAC ------------------------------------------------------------------


def _state_from_workload(wl, variant) -> RbacState:
    s = setup(variant)
    s.users = set(wl.users)
    s.roles = set(wl.roles)
    s.ur = set(wl.ur)
    s.rh = set(wl.rh)
    if s.maintained is not None:
        s.maintained.update_bases({"ROLES": (s.roles, ()), "RH": (s.rh, ())})
    return s


def _rbac_once(variant: str, wl, capture: list | None):
    def run(clock):
        if capture is not None:
            capture.clear()
        with clock.phase("prepare"):
            s = _state_from_workload(wl, variant)
        with clock.phase("eval"):
            for op in wl.ops:
                if capture is not None and op.kind == "QueryAuthorizedUsers":
                    capture.append(frozenset(authorized_users(s, op.payload[0])))
                else:
                    apply_admin_op(s, op)
        with clock.phase("collect"):
            snapshot = frozenset(trans_rh(s))
        return s, snapshot

    return run


def run_rbac_benchmark(
    variant, cfg: RbacWorkloadConfig, repeats: int = DEFAULT_REPEATS, workload=None
):
    variant = getattr(variant, "value", variant)
    if variant not in RBAC_VARIANTS:
        raise ValueError(f"unknown RBAC variant {variant!r}")
    wl = gen_rbac_workload(cfg) if workload is None else workload
    means, (_, snapshot) = timed_runs(_rbac_once(variant, wl, None), repeats)
    records = records_from_means(
        "rbac", variant, cfg.n_queries, means, repeats, len(snapshot), cfg.seed
    )
    return records, len(snapshot)


def run_rbac_comparison(cfg: RbacWorkloadConfig, repeats: int = 1, workload=None):
    """Run all five variants on one workload; any disagreement raises.

    Compared per variant pair: every query's answer set in sequence, the
    final closure snapshot, and the final base state.
    """
    wl = gen_rbac_workload(cfg) if workload is None else workload
    records = []
    outcomes = {}
    for variant in RBAC_VARIANTS:
        answers: list = []
        means, (s, snapshot) = timed_runs(_rbac_once(variant, wl, answers), repeats)
        outcomes[variant] = (answers, snapshot, (s.users, s.roles, s.ur, s.rh))
        records += records_from_means(
            "rbac", variant, cfg.n_queries, means, repeats, len(snapshot), cfg.seed
        )
    reference = outcomes["NonLocal"]
    for variant, got in outcomes.items():
        for label, a, b in zip(("query answers", "closure", "base state"), reference, got):
            if a != b:
                raise VariantMismatch(f"{variant} disagrees with NonLocal on {label}")
    return records


# -- program analysis ------------------------------------------------------


def _read_fact_base(path, clock):
    path = Path(path)
    if path.suffix == CACHE_SUFFIX:
        with clock.phase("read_cache"):
            return load_cache(path)
    with clock.phase("read_raw"):
        return parse_fact_file(path)


def run_pa_benchmark(fact_file, variant: str = "PA", repeats: int = DEFAULT_REPEATS):
    from ..pa import run_pa

    def run(clock):
        fb = _read_fact_base(fact_file, clock)
        nfacts = sum(len(fb.get(name)) for name in fb.names())
        with clock.phase("eval"):
            report = run_pa(fb, variant)
        with clock.phase("collect"):
            size = report.num_defined
        return nfacts, report, size

    means, (nfacts, report, size) = timed_runs(run, repeats)
    records = records_from_means("pa", variant, nfacts, means, repeats, size, 0)
    return records, report


# -- cache round-trip timing -----------------------------------------------


def run_cache_benchmark(raw_path, repeats: int = DEFAULT_REPEATS):
    """Times raw parse, cache write, cache load for one fact file."""
    raw_path = Path(raw_path)
    cache_path = raw_path.with_suffix(raw_path.suffix + CACHE_SUFFIX)

    def run(clock):
        with clock.phase("read_raw"):
            db = parse_fact_file(raw_path)
        with clock.phase("write_cache"):
            write_cache(db, cache_path)
        with clock.phase("read_cache"):
            reloaded = load_cache(cache_path)
        return db, reloaded

    means, (db, reloaded) = timed_runs(run, repeats)
    if reloaded != db:
        raise VariantMismatch(f"cache round-trip changed the contents of {raw_path}")
    nfacts = sum(len(db.get(name)) for name in db.names())
    records = records_from_means("cache", "cache", nfacts, means, repeats, nfacts, 0)
    return records, cache_path


__all__ = [
    "RBAC_VARIANTS",
    "TC_VARIANTS",
    "VariantMismatch",
    "run_cache_benchmark",
    "run_pa_benchmark",
    "run_rbac_benchmark",
    "run_rbac_comparison",
    "run_tc_benchmark",
]
