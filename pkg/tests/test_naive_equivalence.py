"""Differential testing of the delta-iteration engine against eval_naive.

eval_naive shares no join machinery with the engine: it re-derives every
rule from scratch each round with a backtracking matcher. Agreement over
random stratified rule sets is the main correctness evidence for the
compiled plans.
"""

import random

from hypothesis import given, settings, strategies as st

from rulebench.datalog import Database, eval_naive, eval_stratified, parse_rules

from genrules import random_stratified_ruleset, to_oracle_rules
from oracles import least_model


def assert_same_model(rs, db):
    fast = eval_stratified(db, rs)
    slow = eval_naive(db, rs)
    assert fast.as_dict() == slow.as_dict(), str(rs)


def test_single_edge():
    db = Database()
    db.add_facts("edge", [("a", "b")], arity=2)
    rs = parse_rules("path(X,Y) :- edge(X,Y).\npath(X,Y) :- edge(X,Z), path(Z,Y).")
    out = eval_naive(db, rs)
    assert out.tuples("path") == {("a", "b")}
    assert_same_model(rs, db)


def test_same_generation_hand_case():
    rs = parse_rules(
        "sg(X,Y) :- par(X,P), par(Y,P).\n"
        "sg(X,Y) :- par(X,P), sg(P,Q), par(Y,Q)."
    )
    db = Database()
    db.add_facts("par", [("c1", "p"), ("c2", "p")], arity=2)
    out = eval_naive(db, rs)
    assert {("c1", "c2"), ("c2", "c1")} <= out.tuples("sg")
    assert_same_model(rs, db)


def test_negation_hand_case():
    rs = parse_rules(
        """
        reach(X) :- root(X).
        reach(Y) :- reach(X), edge(X, Y).
        dead(X) :- node(X), not reach(X).
        """
    )
    db = Database()
    db.add_facts("root", [(0,)], arity=1)
    db.add_facts("node", [(i,) for i in range(5)], arity=1)
    db.add_facts("edge", [(0, 1), (3, 4)], arity=2)
    assert_same_model(rs, db)


def test_two_hundred_random_stratified_sets_agree():
    for seed in range(200):
        rs, db = random_stratified_ruleset(random.Random(seed))
        assert_same_model(rs, db)


def test_negation_free_sets_match_the_backtracking_oracle():
    # restrict to seeds whose generated set happens to be negation-free,
    # where least_model with a constant-false neg test is the plain oracle
    checked = 0
    seed = 0
    while checked < 40:
        rs, db = random_stratified_ruleset(random.Random(seed))
        seed += 1
        if any(l.negated for r in rs.rules for l in r.body):
            continue
        checked += 1
        expected = least_model(
            to_oracle_rules(rs),
            {p: db.tuples(p, rs.arities[p]) for p in rs.base_preds},
            lambda pred, t: False,
        )
        got = eval_stratified(db, rs)
        for p in rs.derived_preds:
            assert got.tuples(p) == expected[p]


@settings(max_examples=150, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**9))
def test_agreement_property(seed):
    rs, db = random_stratified_ruleset(random.Random(seed))
    assert_same_model(rs, db)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**9), st.integers(0, 3))
def test_rule_permutation_property(seed, perm_seed):
    rs, db = random_stratified_ruleset(random.Random(seed))
    rules = list(rs.rules)
    random.Random(perm_seed).shuffle(rules)
    from rulebench.datalog import RuleSet

    rs2 = RuleSet.build(rules, name="shuffled")
    assert eval_stratified(db, rs).as_dict() == eval_stratified(db, rs2).as_dict()
