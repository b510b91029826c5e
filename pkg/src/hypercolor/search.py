"""Exhaustive backtracking search for proper 2-colorings of small graphs.

The search assigns vertices 0..n-1 in order, trying color 0 before 1, and
prunes as soon as a fully-assigned edge goes monochromatic.  Reading the
leaves left to right this visits colorings in increasing lexicographic
order (vertex 0 most significant), so the first leaf reached is the
lexicographically first proper coloring.
"""

from __future__ import annotations

import numpy as np

from .core import Coloring, KGraph, UNSET


def _edges_by_max_vertex(g: KGraph) -> list[list[tuple[int, ...]]]:
    by_max: list[list[tuple[int, ...]]] = [[] for _ in range(g.n)]
    for e in g.edges():
        by_max[e[-1]].append(e)
    return by_max


def lexfirst_proper_coloring(g: KGraph, fix_vertex0: bool = True) -> Coloring | None:
    """Lexicographically first proper total coloring, or None.

    With fix_vertex0 (the default) only colorings assigning vertex 0 the
    color 0 are searched; since the complement of a proper coloring is
    proper, the overall lex-first coloring always has that form.
    """
    n = g.n
    if n == 0:
        return Coloring.unset(0)
    by_max = _edges_by_max_vertex(g)
    assign = np.full(n, UNSET, dtype=np.int8)

    def ok(v: int) -> bool:
        for e in by_max[v]:
            c0 = assign[e[0]]
            if all(assign[u] == c0 for u in e[1:]):
                return False
        return True

    v = 0
    choices = np.zeros(n, dtype=np.int8)  # next color to try at depth v
    while True:
        if choices[v] > 1 or (v == 0 and fix_vertex0 and choices[v] > 0):
            # exhausted this depth; backtrack
            assign[v] = UNSET
            choices[v] = 0
            v -= 1
            if v < 0:
                return None
            choices[v] += 1
            continue
        assign[v] = choices[v]
        if ok(v):
            if v == n - 1:
                return Coloring(assign.copy())
            v += 1
        else:
            choices[v] += 1


def is_two_colorable(g: KGraph) -> bool:
    return lexfirst_proper_coloring(g) is not None
