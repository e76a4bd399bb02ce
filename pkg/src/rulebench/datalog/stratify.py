"""Stratification of rule sets with negation.

Builds the predicate dependency graph, finds strongly connected
components, rejects negation inside a component, and assigns contiguous
stratum levels such that positive dependencies never go up and negative
dependencies go strictly down.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotStratifiable
from .model import RuleSet


@dataclass(frozen=True)
class Stratification:
    strata: tuple[frozenset[str], ...]
    level: dict[str, int]


def _dependency_edges(rs: RuleSet) -> dict[tuple[str, str], bool]:
    """(head, body-pred) -> True when some occurrence is negated."""
    edges: dict[tuple[str, str], bool] = {}
    for rule in rs.rules:
        h = rule.head.pred
        for lit in rule.body:
            key = (h, lit.pred)
            edges[key] = edges.get(key, False) or lit.negated
    return edges


def _sccs(nodes: list[str], succ: dict[str, list[str]]) -> list[list[str]]:
    """Tarjan's algorithm, iterative (rule sets can be deep)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[list[str]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, ei = work[-1]
            if ei == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            children = succ.get(node, [])
            while ei < len(children):
                child = children[ei]
                ei += 1
                if child not in index:
                    work[-1] = (node, ei)
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                result.append(comp)
            if work:
                parent, _ = work[-1]
                low[parent] = min(low[parent], low[node])
    return result


def _negative_cycle(h: str, b: str, succ: dict[str, list[str]], members: set[str]):
    """One cycle witnessing the negative edge h -> b inside an SCC.

    Returns [h, b, ..., h]: the negative dependency followed by a positive
    dependency path from b back to h within the component.
    """
    if h == b:
        return [h, h]
    prev: dict[str, str] = {}
    frontier = [b]
    seen = {b}
    while frontier and h not in seen:
        nxt = []
        for node in frontier:
            for child in succ.get(node, []):
                if child in members and child not in seen:
                    seen.add(child)
                    prev[child] = node
                    nxt.append(child)
        frontier = nxt
    path = [h]
    while path[-1] != b:
        path.append(prev[path[-1]])
    path.reverse()
    return [h] + path


def stratify(rs: RuleSet) -> Stratification:
    """Assign strata to derived predicates or raise NotStratifiable."""
    edges = _dependency_edges(rs)
    derived = rs.derived_preds
    succ: dict[str, list[str]] = {}
    for (h, b), _neg in sorted(edges.items()):
        if b in derived:
            succ.setdefault(h, []).append(b)

    comps = _sccs(sorted(derived), succ)
    comp_of: dict[str, int] = {}
    for ci, comp in enumerate(comps):
        for p in comp:
            comp_of[p] = ci

    for (h, b), neg in sorted(edges.items()):
        if neg and b in derived and comp_of[h] == comp_of[b]:
            members = set(comps[comp_of[h]])
            cycle = _negative_cycle(h, b, succ, members)
            raise NotStratifiable(cycle)

    # Tarjan emits components in reverse topological order: every edge
    # from comps[i] points into comps[j] with j < i, so one pass suffices.
    comp_level = [0] * len(comps)
    neg_base_heads = {
        h for (h, b), neg in edges.items() if neg and b not in derived
    }
    for ci, comp in enumerate(comps):
        level = 1 if any(p in neg_base_heads for p in comp) else 0
        for p in comp:
            for (h, b), neg in edges.items():
                if h != p or b not in derived or comp_of[b] == ci:
                    continue
                level = max(level, comp_level[comp_of[b]] + (1 if neg else 0))
        comp_level[ci] = level

    # compress to contiguous stratum indices
    used = sorted(set(comp_level))
    remap = {lv: i for i, lv in enumerate(used)}
    level = {p: remap[comp_level[comp_of[p]]] for p in derived}
    strata = tuple(
        frozenset(p for p in derived if level[p] == i) for i in range(len(used))
    )
    return Stratification(strata=strata, level=level)
