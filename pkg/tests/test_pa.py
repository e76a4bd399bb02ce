"""Class-hierarchy analysis: the four parts against a brute-force oracle."""

import random
from fractions import Fraction
from pathlib import Path

import pytest

from oracles import pa_oracle
from rulebench.datalog import Database, parse_fact_file
from rulebench.pa import (
    CyclicHierarchy,
    EmptyAnalysis,
    compute_statistics,
    make_height,
    render_report,
    report_csv_row,
    run_pa,
    validate_ast_facts,
)

DATA = Path(__file__).parent / "data"


def facts_of(class_defs):
    """Encode (name, [base_names]) statements as AST-shaped facts."""
    next_id = iter(range(1, 10**9)).__next__
    classdef, member, name_facts = set(), set(), set()
    for cname, bases in class_defs:
        blist = next_id()
        classdef.add((next_id(), cname, blist, next_id(), next_id(), next_id()))
        for i, b in enumerate(bases):
            ref = next_id()
            member.add((blist, ref, i))
            name_facts.add((ref, b, next_id()))
    db = Database()
    db.add_facts("ClassDef", classdef, arity=6)
    db.add_facts("Member", member, arity=3)
    db.add_facts("Name", name_facts, arity=3)
    return db


def random_class_defs(rng, max_classes=40):
    # bases only reference earlier classes (or never-defined library names),
    # so the hierarchy is acyclic by construction
    n = rng.randint(1, max_classes)
    names = [f"C{i}" for i in range(n)]
    library = ["Base", "Mixin", "object"]
    defs = []
    for i in range(n):
        cname, visible = names[i], names[:i]
        if i > 0 and rng.random() < 0.1:
            j = rng.randrange(i)
            cname, visible = names[j], names[:j]  # redefinition of an earlier class
        pool = visible + [b for b in library if rng.random() < 0.2]
        k = rng.randint(0, min(3, len(pool)))
        defs.append((cname, rng.sample(pool, k) if k else []))
    return defs


def test_three_classes_report():
    fb = parse_fact_file(DATA / "three_classes.facts")
    rep = run_pa(fb)
    assert rep.defined == {"A", "B", "C"}
    assert rep.extending == {("B", "A"), ("C", "B")}
    assert rep.avg_extending == Fraction(2, 3)
    assert rep.roots == {"A"}
    assert rep.max_height == 2
    assert rep.roots_max_height == {"A"}
    assert rep.desc == {("B", "A"), ("C", "A")}
    assert rep.max_desc == 2
    assert rep.roots_max_desc == {"A"}


def test_three_classes_render_matches_golden():
    fb = parse_fact_file(DATA / "three_classes.facts")
    golden = (DATA / "three_classes.report").read_text()
    assert render_report(run_pa(fb)) + "\n" == golden


def test_three_classes_csv_row():
    fb = parse_fact_file(DATA / "three_classes.facts")
    assert report_csv_row(run_pa(fb)) == [3, 2, 1, 2, 1, 2, 2, 1]


def test_diamond_counts_each_descendant_once():
    # D reaches A along two paths but is one descendant
    fb = facts_of([("A", []), ("B", ["A"]), ("C", ["A"]), ("D", ["B", "C"])])
    rep = run_pa(fb)
    assert rep.desc == {("B", "A"), ("C", "A"), ("D", "A")}
    assert rep.max_desc == 3
    assert rep.max_height == 2


def test_random_bases_match_oracle_both_variants():
    for seed in range(120):
        rng = random.Random(seed)
        defs = random_class_defs(rng)
        want = pa_oracle(defs, None)
        rep = run_pa(facts_of(defs), "PA")
        opt = run_pa(facts_of(defs), "PAopt")
        assert rep == opt, f"seed {seed}: PA and PAopt disagree"
        assert rep.defined == want["defined"], f"seed {seed}"
        assert rep.extending == want["extending"], f"seed {seed}"
        assert rep.num_defined == want["num_defined"]
        assert rep.num_extending == want["num_extending"]
        assert rep.roots == want["roots"], f"seed {seed}"
        assert rep.max_height == want["max_height"], f"seed {seed}"
        assert rep.roots_max_height == want["roots_max_height"], f"seed {seed}"
        assert rep.desc == want["desc"], f"seed {seed}"
        assert rep.max_desc == want["max_desc"], f"seed {seed}"
        assert rep.roots_max_desc == want["roots_max_desc"], f"seed {seed}"


def test_redefinition_merges_under_one_name():
    fb = facts_of([("A", []), ("B", ["A"]), ("B", ["Base"])])
    rep = run_pa(fb)
    assert rep.num_defined == 2
    assert rep.extending == {("B", "A"), ("B", "Base")}
    assert rep.roots == {"A", "Base"}


def test_empty_base_zero_report():
    rep = run_pa(Database())
    assert rep.num_defined == 0
    assert rep.avg_extending is None
    assert rep.max_height == 0
    assert "avg_extending" not in render_report(rep)


def test_statistics_refuse_empty():
    with pytest.raises(EmptyAnalysis):
        compute_statistics(set(), set())


def test_cycle_rejected_with_witness():
    fb = facts_of([("A", ["B"]), ("B", ["A"])])
    with pytest.raises(CyclicHierarchy) as exc:
        run_pa(fb)
    cyc = exc.value.cycle
    assert cyc[0] == cyc[-1]
    assert set(cyc) <= {"A", "B"}
    assert "->" in str(exc.value)


def test_self_extension_is_a_cycle():
    with pytest.raises(CyclicHierarchy):
        run_pa(facts_of([("A", ["A"])]))


def test_height_memoization_observable():
    chain = {(f"c{i + 1}", f"c{i}") for i in range(29)}
    height = make_height(chain)
    assert height("c0") == 29
    info = height.cache_info()
    assert info.misses == 30
    height("c0")
    after = height.cache_info()
    assert after.misses == 30
    assert after.hits > info.hits


def test_unknown_variant_rejected():
    with pytest.raises(KeyError):
        run_pa(Database(), "fast")


def test_validate_flags_bad_member_facts():
    assert validate_ast_facts(parse_fact_file(DATA / "three_classes.facts")) == []
    bad = Database()
    bad.add_facts("Member", {(1, 2, -1), (1, 3, "x"), (4, 5, 0), (4, 6, 0)}, arity=3)
    problems = validate_ast_facts(bad)
    assert len(problems) == 3
    assert any("bad index" in p for p in problems)
    assert any("two elements" in p for p in problems)
