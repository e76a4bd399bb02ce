"""Command-line front end.

    rulebench gen tc --vertices N --edges M [--cyclic|--acyclic] --seed S -o FILE
    rulebench gen rbac [--scale F --queries Q] --seed S -o DIR
    rulebench run tc|rbac|pa --variant V --repeat R [--sizes ...] --csv F [--plot F]
    rulebench cache FILE
    rulebench pa FILE --variant pa|paopt

Exit codes: 0 ok, 1 usage, 2 data error, 3 invariant failure.
"""

from __future__ import annotations

import argparse
import sys

from ..datalog import Database, ParseError, write_facts
from ..pa import CyclicHierarchy, render_report, report_csv_row, run_pa, validate_ast_facts
from ..rbac import CycleRejected, UnknownId
from .cache import CACHE_SUFFIX, CorruptCache, cache_facts, load_cache
from .generators import (
    RbacWorkloadConfig,
    TcGenConfig,
    gen_rbac_workload,
    gen_tc_graph,
    scaled_update_counts,
    write_workload,
)
from .report import write_csv, write_plot
from .runners import (
    RBAC_VARIANTS,
    TC_VARIANTS,
    VariantMismatch,
    run_pa_benchmark,
    run_rbac_benchmark,
    run_rbac_comparison,
    run_tc_benchmark,
)


class _ArgParser(argparse.ArgumentParser):
    # usage problems are exit code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _tc_sizes(text: str):
    out = []
    for part in text.split(","):
        v, sep, e = part.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"size {part!r} is not VERTICES:EDGES")
        try:
            out.append((int(v), int(e)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"size {part!r} is not numeric") from None
    return out


def _int_sizes(text: str):
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes {text!r} must be integers") from None


def _read_fact_base(path: str):
    if path.endswith(CACHE_SUFFIX):
        return load_cache(path)
    from ..datalog import parse_fact_file

    return parse_fact_file(path)


def _emit(records, args) -> None:
    if getattr(args, "csv", None):
        write_csv(records, args.csv)
    if getattr(args, "plot", None):
        write_plot(records, args.plot)


def cmd_gen_tc(args) -> int:
    cfg = TcGenConfig(args.vertices, args.edges, cyclic=not args.acyclic, seed=args.seed)
    rel = gen_tc_graph(cfg)
    db = Database()
    db.add_facts("edge", rel.tuples, arity=2)
    write_facts(db, args.out)
    print(f"wrote {len(rel)} edges over {cfg.vertices} vertices to {args.out}")
    return 0


def cmd_gen_rbac(args) -> int:
    base = RbacWorkloadConfig()
    f = args.scale
    cfg = RbacWorkloadConfig(
        users=round(base.users * f),
        roles=round(base.roles * f),
        ur_size=round(base.ur_size * f),
        rh_size=round(base.rh_size * f),
        rh_height=args.height,
        n_queries=args.queries,
        seed=args.seed,
        update_counts=scaled_update_counts(f),
    )
    wl = gen_rbac_workload(cfg)
    write_workload(wl, args.out)
    print(
        f"wrote {len(wl.users)} users, {len(wl.roles)} roles, {len(wl.ur)} UR, "
        f"{len(wl.rh)} RH, {len(wl.ops)} ops to {args.out}"
    )
    return 0


def cmd_run_tc(args) -> int:
    variants = TC_VARIANTS if args.variant == "all" else (args.variant,)
    records = []
    for v, e in args.sizes:
        cfg = TcGenConfig(v, e, cyclic=not args.acyclic, seed=args.seed)
        for variant in variants:
            recs, size = run_tc_benchmark(variant, cfg, args.repeat, kernel=args.kernel)
            records += recs
            total = next(r.cpu_seconds_mean for r in recs if r.phase == "total")
            print(f"tc {variant} {v}:{e} total {total:.3f}s closure {size}")
    _emit(records, args)
    return 0


def cmd_run_rbac(args) -> int:
    base = RbacWorkloadConfig()
    f = args.scale
    records = []
    for n in args.sizes:
        cfg = RbacWorkloadConfig(
            users=round(base.users * f),
            roles=round(base.roles * f),
            ur_size=round(base.ur_size * f),
            rh_size=round(base.rh_size * f),
            n_queries=n,
            seed=args.seed,
            update_counts=scaled_update_counts(f),
        )
        if args.variant == "all":
            recs = run_rbac_comparison(cfg, args.repeat)
        else:
            recs, _ = run_rbac_benchmark(args.variant, cfg, args.repeat)
        records += recs
        for r in recs:
            if r.phase == "total":
                print(f"rbac {r.variant} queries={n} total {r.cpu_seconds_mean:.3f}s")
    _emit(records, args)
    return 0


def cmd_run_pa(args) -> int:
    variants = ("PA", "PAopt") if args.variant == "all" else (args.variant,)
    records = []
    reports = []
    for variant in variants:
        recs, report = run_pa_benchmark(args.facts, variant, args.repeat)
        records += recs
        reports.append(report)
        total = next(r.cpu_seconds_mean for r in recs if r.phase == "total")
        row = ",".join(str(x) for x in report_csv_row(report))
        print(f"pa {variant} total {total:.3f}s report {row}")
    if len(reports) == 2 and reports[0] != reports[1]:
        raise VariantMismatch("PA and PAopt reports differ")
    _emit(records, args)
    return 0


def cmd_cache(args) -> int:
    print(cache_facts(args.file))
    return 0


def cmd_pa(args) -> int:
    fb = _read_fact_base(args.facts)
    problems = validate_ast_facts(fb)
    if problems:
        raise ValueError("; ".join(problems))
    print(render_report(run_pa(fb, args.variant)))
    return 0


def build_parser() -> _ArgParser:
    p = _ArgParser(prog="rulebench")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    gen = sub.add_parser("gen", help="generate benchmark data")
    gsub = gen.add_subparsers(dest="target", required=True, parser_class=_ArgParser)

    gt = gsub.add_parser("tc", help="random edge relation")
    gt.add_argument("--vertices", type=int, required=True)
    gt.add_argument("--edges", type=int, required=True)
    mode = gt.add_mutually_exclusive_group()
    mode.add_argument("--cyclic", action="store_true", default=True)
    mode.add_argument("--acyclic", dest="acyclic", action="store_true", default=False)
    gt.add_argument("--seed", type=int, default=0)
    gt.add_argument("-o", "--out", required=True)
    gt.set_defaults(func=cmd_gen_tc)

    gr = gsub.add_parser("rbac", help="initial state plus op sequence")
    gr.add_argument("--scale", type=float, default=1.0, help="scale the default sizes")
    gr.add_argument("--height", type=int, default=RbacWorkloadConfig().rh_height)
    gr.add_argument("--queries", type=int, default=RbacWorkloadConfig().n_queries)
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("-o", "--out", required=True)
    gr.set_defaults(func=cmd_gen_rbac)

    run = sub.add_parser("run", help="run a benchmark")
    rsub = run.add_subparsers(dest="benchmark", required=True, parser_class=_ArgParser)

    rt = rsub.add_parser("tc", help="transitive closure")
    rt.add_argument("--variant", choices=TC_VARIANTS + ("all",), default="TC")
    rt.add_argument("--repeat", type=int, default=10)
    rt.add_argument("--sizes", type=_tc_sizes, default=[(100, 200)],
                    help="comma list of VERTICES:EDGES")
    rt.add_argument("--acyclic", action="store_true")
    rt.add_argument("--seed", type=int, default=0)
    rt.add_argument("--kernel", choices=("py", "ext", "auto"), default="auto")
    rt.add_argument("--csv")
    rt.add_argument("--plot")
    rt.set_defaults(func=cmd_run_tc)

    rr = rsub.add_parser("rbac", help="role-based access control workload")
    rr.add_argument("--variant", choices=RBAC_VARIANTS + ("all",), default="NonLocal")
    rr.add_argument("--repeat", type=int, default=10)
    rr.add_argument("--sizes", type=_int_sizes, default=[500],
                    help="comma list of query counts")
    rr.add_argument("--scale", type=float, default=1.0)
    rr.add_argument("--seed", type=int, default=0)
    rr.add_argument("--csv")
    rr.add_argument("--plot")
    rr.set_defaults(func=cmd_run_rbac)

    rp = rsub.add_parser("pa", help="class hierarchy analysis")
    rp.add_argument("facts", help="fact file (or .cache)")
    rp.add_argument("--variant", choices=("PA", "PAopt", "all"), default="PA")
    rp.add_argument("--repeat", type=int, default=10)
    rp.add_argument("--csv")
    rp.set_defaults(func=cmd_run_pa)

    c = sub.add_parser("cache", help="write the binary cache for a fact file")
    c.add_argument("file")
    c.set_defaults(func=cmd_cache)

    pa = sub.add_parser("pa", help="print the analysis report for a fact file")
    pa.add_argument("facts")
    pa.add_argument("--variant", choices=("pa", "paopt"), default="pa")
    pa.set_defaults(func=cmd_pa)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError, CorruptCache, ValueError, UnknownId,
            CycleRejected, CyclicHierarchy) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VariantMismatch as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
