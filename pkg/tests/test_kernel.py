"""The compiled join kernel must be indistinguishable from the fallback."""

import random
import subprocess
import sys

import pytest

from genrules import random_stratified_ruleset
from rulebench.datalog import Database, eval_stratified, parse_rules
from rulebench.datalog.kernel import COMPILED, get_kernel, kernels

needs_ext = pytest.mark.skipif(not COMPILED, reason="extension not built")


def test_kernel_table_matches_compiled_flag():
    names = set(kernels())
    assert "py" in names
    assert ("ext" in names) == COMPILED


def test_get_kernel_resolution():
    default = get_kernel(None)
    assert get_kernel("auto") is default
    assert get_kernel("py") is kernels()["py"]
    with pytest.raises(ValueError):
        get_kernel("cuda")


def test_pure_env_var_forces_fallback():
    code = (
        "import rulebench.datalog.kernel as k;"
        "print(k.COMPILED, sorted(k.kernels()))"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"RULEBENCH_PURE": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "False ['py']"


@needs_ext
def test_kernels_agree_on_transitive_closure():
    rs = parse_rules("t(X,Y) :- edge(X,Y).\nt(X,Z) :- t(X,Y), edge(Y,Z).")
    rng = random.Random(11)
    edges = {(rng.randrange(40), rng.randrange(40)) for _ in range(160)}
    db = Database()
    db.add_facts("edge", edges, arity=2)
    assert eval_stratified(db, rs, kernel="py") == eval_stratified(
        db, rs, kernel="ext"
    )


@needs_ext
def test_kernels_agree_on_random_programs():
    for seed in range(150):
        rng = random.Random(seed)
        rs, db = random_stratified_ruleset(rng)
        got_py = eval_stratified(db, rs, kernel="py")
        got_ext = eval_stratified(db, rs, kernel="ext")
        assert got_py == got_ext, f"seed {seed}: kernels diverge"
