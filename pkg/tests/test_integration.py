import random

import pytest

from rulebench.datalog import (
    BindingConflict,
    Database,
    DerivedWriteForbidden,
    Relation,
)
from rulebench.integration import (
    infer,
    infer_with_undefined,
    read_derived,
    register_maintained,
    update_base,
)
from rulebench.rulesets import trans_rh_rs, trans_rh_no_base_rs, trans_rs


def test_infer_single_query_returns_a_relation():
    out = infer(trans_rs(), "path", edge={(1, 2), (2, 3)})
    assert isinstance(out, Relation)
    assert out.tuples == {(1, 2), (2, 3), (1, 3)}


def test_infer_accepts_scalar_sets_and_relations():
    rel = Relation("edge", 2, {(1, 2)})
    assert infer(trans_rs(), "path", edge=rel).tuples == {(1, 2)}
    # 1-ary bindings may be given as bare scalars
    out = infer(trans_rh_rs(), "transRH", RH=set(), ROLES={"r1", "r2"})
    assert out.tuples == {("r1", "r1"), ("r2", "r2")}


def test_infer_query_list_preserves_order():
    rs_out = infer(trans_rs(), ["path"], edge={(1, 2)})
    assert isinstance(rs_out, list) and len(rs_out) == 1


def test_infer_rejects_unknown_names():
    with pytest.raises(ValueError):
        infer(trans_rs(), "nope", edge=set())
    with pytest.raises(ValueError):
        infer(trans_rs(), "path", bogus=set())
    with pytest.raises(ValueError):
        infer(trans_rs(), "path", edge=set(), semantics="modal")


def test_infer_well_founded_semantics():
    from rulebench.datalog import parse_rules

    rs = parse_rules("win(X) :- move(X, Y), not win(Y).")
    true_rel = infer(rs, "win", move={("a", "b"), ("b", "a")}, semantics="well-founded")
    assert true_rel.tuples == set()
    t, u = infer_with_undefined(rs, "win", move={("a", "b"), ("b", "a")})
    assert t.tuples == set()
    assert u.tuples == {("a",), ("b",)}


def test_transitive_role_hierarchy_footnote_variant_agrees():
    rng = random.Random(5)
    roles = {f"r{i}" for i in range(8)}
    rh = {tuple(rng.sample(sorted(roles), 2)) for _ in range(10)}
    a = infer(trans_rh_rs(), "transRH", RH=rh, ROLES=roles)
    b = infer(trans_rh_no_base_rs(), "transRH", RH=rh, ROLES=roles)
    assert a.tuples == b.tuples


def test_registered_binding_derives_immediately():
    db = Database()
    db.add_facts("edge", {(1, 2), (2, 3)}, arity=2)
    mb = register_maintained(db, trans_rs())
    assert db.tuples("path") == {(1, 2), (2, 3), (1, 3)}
    assert mb.read_derived("path").tuples == db.tuples("path")


def test_updates_rederive_and_direct_writes_are_blocked():
    db = Database()
    mb = register_maintained(db, trans_rs())
    update_base(mb, "edge", add={(1, 2), (2, 3)})
    assert read_derived(mb, "path").tuples == {(1, 2), (2, 3), (1, 3)}
    update_base(mb, "edge", remove={(2, 3)})
    assert read_derived(mb, "path").tuples == {(1, 2)}
    with pytest.raises(DerivedWriteForbidden):
        db.add_facts("path", {(9, 9)})
    with pytest.raises(DerivedWriteForbidden):
        mb.update_base("path", add={(9, 9)})


def test_no_op_updates_skip_rederivation():
    db = Database()
    db.add_facts("edge", {(1, 2)}, arity=2)
    mb = register_maintained(db, trans_rs())
    counted = 0
    original = mb._rederive

    def counting():
        nonlocal counted
        counted += 1
        original()

    mb._rederive = counting
    mb.update_base("edge", add={(1, 2)})          # already present
    mb.update_base("edge", remove={(5, 5)})       # never present
    assert counted == 0
    mb.update_base("edge", add={(2, 3)})
    assert counted == 1


def test_lazy_binding_defers_until_read():
    db = Database()
    mb = register_maintained(db, trans_rs(), lazy=True)
    mb.update_base("edge", add={(1, 2), (2, 3)})
    assert mb.dirty
    assert mb.read_derived("path").tuples == {(1, 2), (2, 3), (1, 3)}
    assert not mb.dirty


def test_two_bindings_cannot_claim_one_relation():
    db = Database()
    register_maintained(db, trans_rs())
    with pytest.raises(BindingConflict):
        register_maintained(db, trans_rs())


def test_close_releases_the_claim():
    db = Database()
    mb = register_maintained(db, trans_rs())
    mb.close()
    db.add_facts("path", {(9, 9)})
    assert (9, 9) in db.tuples("path")


def test_renamed_relations_via_maps():
    db = Database()
    db.add_facts("links", {(1, 2)}, arity=2)
    mb = register_maintained(
        db, trans_rs(), base_map={"edge": "links"}, derived_map={"path": "reachable"}
    )
    assert db.tuples("reachable") == {(1, 2)}
    mb.update_base("edge", add={(2, 3)})
    assert db.tuples("reachable") == {(1, 2), (2, 3), (1, 3)}


def test_thousand_step_update_read_fuzz_stays_sound():
    rng = random.Random(99)
    db = Database()
    mb = register_maintained(db, trans_rs(), lazy=bool(rng.getrandbits(1)))
    edges = set()
    for step in range(1000):
        if edges and rng.random() < 0.4:
            t = rng.choice(sorted(edges))
            edges.discard(t)
            mb.update_base("edge", remove={t})
        else:
            t = (rng.randint(1, 9), rng.randint(1, 9))
            edges.add(t)
            mb.update_base("edge", add={t})
        if rng.random() < 0.5 or step % 97 == 0:
            fresh = infer(trans_rs(), "path", edge=edges)
            assert mb.read_derived("path").tuples == fresh.tuples, step
