import pytest

from rulebench.datalog import (
    Database,
    InconsistentFunctorArity,
    NestedFunctor,
    eval_stratified,
    flatten_function_symbols,
    parse_rules,
)


def test_functor_argument_widens_the_predicate():
    rs = flatten_function_symbols("isa(prov(Y, X), provi) :- src(Y, X).")
    head = rs.rules[0].head
    assert head.pred == "isa"
    assert head.arity == 4
    assert head.args[0] == "prov"
    assert head.args[3] == "provi"


def test_widening_keeps_surrounding_arguments_in_place():
    rs = flatten_function_symbols("att(prov(Y, X), number, A) :- src(Y, X, A).")
    head = rs.rules[0].head
    assert head.arity == 5
    assert head.args[0] == "prov"
    assert head.args[3] == "number"


def test_functor_free_source_is_unchanged():
    src = "path(X,Y) :- edge(X,Y).\npath(X,Y) :- edge(X,Z), path(Z,Y)."
    assert flatten_function_symbols(src) == parse_rules(src)


def test_nested_functors_rejected():
    with pytest.raises(NestedFunctor):
        flatten_function_symbols("p(f(g(X))) :- q(X).")


def test_functor_arity_must_be_consistent():
    with pytest.raises(InconsistentFunctorArity):
        flatten_function_symbols("p(f(X)) :- q(X).\nr(f(X, Y)) :- s(X, Y).")


def test_plain_rules_reject_functor_terms():
    with pytest.raises(Exception):
        parse_rules("p(f(X)) :- q(X).")


def test_flattened_rules_evaluate_like_the_functor_reading():
    # isa(prov(y,x), provi) over src pairs: derivable isa facts are in
    # bijection with the src pairs, via the widening map
    rs = flatten_function_symbols("isa(prov(Y, X), provi) :- src(Y, X).")
    db = Database()
    src = {(1, "a"), (2, "b"), (3, "c")}
    db.add_facts("src", src, arity=2)
    out = eval_stratified(db, rs)
    assert out.tuples("isa") == {("prov", y, x, "provi") for y, x in src}


def test_functors_in_body_literals_widen_too():
    rs = flatten_function_symbols(
        "uses(N) :- att(prov(Y, X), number, N), keep(Y)."
    )
    db = Database()
    db.add_facts("att", {("prov", 1, 2, "number", 10), ("prov", 3, 4, "number", 40)}, arity=5)
    db.add_facts("keep", {(1,)}, arity=1)
    out = eval_stratified(db, rs)
    assert out.tuples("uses") == {(10,)}
