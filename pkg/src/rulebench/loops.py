"""Transitive closure as plain host-language loops.

Both functions deliberately mirror their original nested-comprehension
formulations, with no indexing; they exist to be measured, not admired.
"""

from __future__ import annotations


def closure_while_some(edges: set) -> set:
    """Add one missing pair per scan until none is found."""
    T = set(edges)
    while True:
        witness = None
        for x, z in T:
            for z2, y in edges:
                if z2 == z and (x, y) not in T:
                    witness = (x, y)
                    break
            if witness is not None:
                break
        if witness is None:
            return T
        T.add(witness)


def closure_while_rescan(edges: set) -> set:
    """Recompute the full worklist from scratch after every single add."""
    T = set(edges)
    W = {(x, y) for x, z in T for z2, y in edges if z2 == z} - T
    while W:
        T.add(W.pop())
        W = {(x, y) for x, z in T for z2, y in edges if z2 == z} - T
    return T
