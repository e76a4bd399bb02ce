#!/usr/bin/env python3
"""Pure-Python vs compiled join kernel on transitive closure.

Usage: python benchmarks/compare_kernels.py [--sizes V:E,V:E,...] [--repeat N]
"""

import argparse
import time

from rulebench.bench.generators import TcGenConfig, gen_tc_graph
from rulebench.datalog.kernel import kernels
from rulebench.integration import infer
from rulebench.rulesets import trans_rs


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="200:600,400:1200,600:2000")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = sorted(kernels())
    if "ext" not in names:
        print("note: compiled kernel unavailable, timing py only")
    print(f"{'size':>12}  " + "".join(f"{n:>10}  " for n in names) + "speedup")
    for part in args.sizes.split(","):
        v, e = (int(x) for x in part.split(":"))
        edges = gen_tc_graph(TcGenConfig(v, e, seed=0))
        best = {}
        results = {}
        for name in names:
            best[name] = min(
                _timed(name, edges, results) for _ in range(args.repeat)
            )
        assert len(set(results.values())) == 1, "kernels disagree"
        ratio = best["py"] / best["ext"] if "ext" in best else float("nan")
        print(
            f"{part:>12}  "
            + "".join(f"{best[n]:>9.3f}s  " for n in names)
            + f"{ratio:.2f}x"
        )


def _timed(name, edges, results) -> float:
    t0 = time.process_time()
    rel = infer(trans_rs(), "path", edge=edges, kernel=name)
    dt = time.process_time() - t0
    results[name] = frozenset(rel.tuples)
    return dt


if __name__ == "__main__":
    main()
