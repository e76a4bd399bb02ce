import random

import pytest

from rulebench.datalog import NotStratifiable, parse_rules, stratify

from genrules import random_stratified_ruleset


def test_recursion_without_negation_is_one_stratum():
    rs = parse_rules("path(X,Y) :- edge(X,Y).\npath(X,Y) :- edge(X,Z), path(Z,Y).")
    s = stratify(rs)
    assert s.strata == (frozenset({"path"}),)
    assert s.level == {"path": 0}


def test_negation_pushes_the_consumer_up():
    rs = parse_rules(
        """
        reach(X) :- root(X).
        reach(Y) :- reach(X), edge(X, Y).
        dead(X) :- node(X), not reach(X).
        """
    )
    s = stratify(rs)
    assert s.level["dead"] == s.level["reach"] + 1


def test_mutual_recursion_shares_a_stratum():
    rs = parse_rules(
        """
        even(X) :- zero(X).
        even(Y) :- odd(X), succ(X, Y).
        odd(Y) :- even(X), succ(X, Y).
        """
    )
    s = stratify(rs)
    assert s.level["even"] == s.level["odd"]


def test_negation_through_recursion_is_rejected_with_a_cycle():
    rs = parse_rules("win(X) :- move(X, Y), not win(Y).")
    with pytest.raises(NotStratifiable) as exc:
        stratify(rs)
    cycle = exc.value.cycle
    assert cycle[0] == cycle[-1] == "win"
    assert "win -> win" in str(exc.value)


def test_two_step_negative_cycle_reported():
    rs = parse_rules(
        """
        p(X) :- v(X), not q(X).
        q(X) :- v(X), r(X).
        r(X) :- v(X), p(X).
        """
    )
    with pytest.raises(NotStratifiable) as exc:
        stratify(rs)
    cycle = exc.value.cycle
    assert cycle[0] == cycle[-1]
    assert set(cycle) <= {"p", "q", "r"}


def test_strata_partition_and_respect_dependencies():
    for seed in range(200):
        rs, _ = random_stratified_ruleset(random.Random(seed))
        s = stratify(rs)
        assert frozenset().union(*s.strata) == rs.derived_preds
        assert sum(len(st) for st in s.strata) == len(rs.derived_preds)
        for rule in rs.rules:
            h = s.level[rule.head.pred]
            for lit in rule.body:
                if lit.pred not in rs.derived_preds:
                    continue
                if lit.negated:
                    assert s.level[lit.pred] < h
                else:
                    assert s.level[lit.pred] <= h


def test_levels_are_contiguous_from_zero():
    rs = parse_rules(
        """
        a(X) :- v(X), not ext(X).
        b(X) :- a(X), not other(X).
        c(X) :- b(X), not a(X).
        """
    )
    s = stratify(rs)
    assert sorted(set(s.level.values())) == list(range(len(s.strata)))
