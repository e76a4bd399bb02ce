"""Class-hierarchy analysis over AST fact bases, in four parts.

Part 1 extracts defined classes and the extension relation with rules;
part 2 computes statistics and root classes with aggregate-style queries;
part 3 computes maximum height with a memoized recursive function; part 4
computes maximum descendant counts with recursive rules plus a memoized
counting function. The "opt" variant only reverses the body of the
recursive descendant rule.

Fact bases use relations ClassDef/6, Name/3, Member/3; anything else in
the database is ignored. Classes are identified by name, so same-named
classes from different files merge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from .datalog import Database
from .integration import infer
from .rulesets import class_extends_rs, desc_opt_rs, desc_rs


class EmptyAnalysis(Exception):
    """Statistics requested for a fact base with no defined classes."""


class CyclicHierarchy(Exception):
    """The extension relation has a cycle; heights are undefined."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        pretty = " -> ".join(str(c) for c in self.cycle)
        super().__init__(f"class hierarchy cycle: {pretty}")


@dataclass(frozen=True)
class AnalysisReport:
    defined: frozenset
    extending: frozenset
    num_defined: int
    num_extending: int
    avg_extending: Fraction | None
    roots: frozenset
    max_height: int
    roots_max_height: frozenset
    desc: frozenset
    max_desc: int
    roots_max_desc: frozenset


def extract_class_relation(fb: Database) -> tuple[set, set]:
    """Part 1: defined class names and the (subclass, superclass) pairs."""
    out = infer(
        class_extends_rs(),
        ["defined", "extending"],
        {
            "ClassDef": fb.tuples("ClassDef", 6),
            "Member": fb.tuples("Member", 3),
            "Name": fb.tuples("Name", 3),
        },
    )
    defined = {c for (c,) in out[0].tuples}
    extending = set(out[1].tuples)
    return defined, extending


def compute_statistics(defined: set, extending: set):
    """Part 2: counts, exact average, and root classes.

    A root has some subclass but extends nothing itself.
    """
    num_defined = len(defined)
    num_extending = len(extending)
    if num_defined == 0:
        raise EmptyAnalysis("no defined classes; average is undefined")
    avg_extending = Fraction(num_extending, num_defined)
    extenders = {c for c, _ in extending}
    roots = {b for _, b in extending if b not in extenders}
    return num_defined, num_extending, avg_extending, roots


def _find_cycle(extending: set) -> list | None:
    succ: dict = {}
    for c, b in extending:
        succ.setdefault(c, []).append(b)
    done: set = set()
    for start in succ:
        if start in done:
            continue
        path: list = []
        on_path: dict = {}
        stack = [(start, iter(succ.get(start, ())))]
        on_path[start] = 0
        path.append(start)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt in on_path:
                    return path[on_path[nxt]:] + [nxt]
                if nxt in done:
                    continue
                on_path[nxt] = len(path)
                path.append(nxt)
                stack.append((nxt, iter(succ.get(nxt, ()))))
                advanced = True
                break
            if not advanced:
                stack.pop()
                done.add(node)
                path.pop()
                del on_path[node]
    return None


def make_height(extending: set):
    """Memoized height function: 0 for leaves, else 1 + max over subclasses.

    The returned callable exposes functools cache_info(), so evaluation
    counts are observable.
    """
    subclasses: dict = {}
    for c, b in extending:
        subclasses.setdefault(b, []).append(c)

    @cache
    def height(c) -> int:
        below = subclasses.get(c)
        if not below:
            return 0
        return 1 + max(height(d) for d in below)

    return height


def height_analysis(extending: set, roots: set) -> tuple[int, set]:
    """Part 3: maximum height over the roots and the argmax roots."""
    cycle = _find_cycle(extending)
    if cycle is not None:
        raise CyclicHierarchy(cycle)
    if not roots:
        return 0, set()
    height = make_height(extending)
    max_height = max(height(r) for r in roots)
    return max_height, {r for r in roots if height(r) == max_height}


def desc_analysis(extending: set, roots: set, variant: str = "PA"):
    """Part 4: descendant pairs per root, maximum count, argmax roots."""
    rs = {"PA": desc_rs, "PAopt": desc_opt_rs}[variant]()
    desc = set(infer(rs, "desc", roots=roots, extending=extending).tuples)

    @cache
    def num_desc(r) -> int:
        return sum(1 for _, root in desc if root == r)

    if not roots:
        return desc, 0, set()
    max_desc = max(num_desc(r) for r in roots)
    return desc, max_desc, {r for r in roots if num_desc(r) == max_desc}


def run_pa(fb: Database, variant: str = "PA") -> AnalysisReport:
    """All four parts over one fact base.

    variant is "PA" or "PAopt" (case preserved from the CLI's pa/paopt).
    An empty fact base yields a zero report with the average absent.
    """
    variant = {"pa": "PA", "paopt": "PAopt", "PA": "PA", "PAopt": "PAopt"}[variant]
    defined, extending = extract_class_relation(fb)
    if not defined:
        return AnalysisReport(
            defined=frozenset(), extending=frozenset(),
            num_defined=0, num_extending=0, avg_extending=None,
            roots=frozenset(), max_height=0, roots_max_height=frozenset(),
            desc=frozenset(), max_desc=0, roots_max_desc=frozenset(),
        )
    num_defined, num_extending, avg_extending, roots = compute_statistics(
        defined, extending
    )
    max_height, roots_max_height = height_analysis(extending, roots)
    desc, max_desc, roots_max_desc = desc_analysis(extending, roots, variant)
    return AnalysisReport(
        defined=frozenset(defined),
        extending=frozenset(extending),
        num_defined=num_defined,
        num_extending=num_extending,
        avg_extending=avg_extending,
        roots=frozenset(roots),
        max_height=max_height,
        roots_max_height=frozenset(roots_max_height),
        desc=frozenset(desc),
        max_desc=max_desc,
        roots_max_desc=frozenset(roots_max_desc),
    )


CSV_COLUMNS = (
    "defined", "extending", "roots", "max_height",
    "roots_max_h", "desc", "max_desc", "roots_max_d",
)


def report_csv_row(report: AnalysisReport) -> list[int]:
    return [
        report.num_defined,
        report.num_extending,
        len(report.roots),
        report.max_height,
        len(report.roots_max_height),
        len(report.desc),
        report.max_desc,
        len(report.roots_max_desc),
    ]


def render_report(report: AnalysisReport) -> str:
    lines = [
        f"defined {report.num_defined}",
        f"extending {report.num_extending}",
    ]
    if report.avg_extending is not None:
        lines.append(f"avg_extending {float(report.avg_extending):.3f}")
    lines += [
        f"roots {len(report.roots)}",
        f"max_height {report.max_height}",
        f"roots_max_height {len(report.roots_max_height)}",
        f"desc {len(report.desc)}",
        f"max_desc {report.max_desc}",
        f"roots_max_desc {len(report.roots_max_desc)}",
    ]
    return "\n".join(lines)


def validate_ast_facts(fb: Database) -> list[str]:
    """Well-formedness problems in the fact-base relations we read."""
    problems = []
    seen: dict = {}
    for lst, elem, i in fb.tuples("Member", 3):
        if not isinstance(i, int) or i < 0:
            problems.append(f"Member({lst!r}, {elem!r}, {i!r}): bad index")
        elif (lst, i) in seen and seen[lst, i] != elem:
            problems.append(f"Member list {lst!r} has two elements at {i}")
        else:
            seen[lst, i] = elem
    return problems
