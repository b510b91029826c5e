"""Detection and certification of K_ll copies, and the goodness audit.

A K_ll copy is an ordered pair of disjoint ell-sets (A, B) such that every
tuple with one vertex in one side and k-1 in the other is an edge.  For
ell >= 2k-3 such a copy has a unique proper 2-coloring (its two sides),
which is what the coloring engines exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels
from .core import (
    KGraph,
    ProbeCounter,
    combinations_colex,
    is_edge,
    neighborhood_nonempty,
)
from .errors import ContractViolation
from .tape import derive_seed, tape_words


@dataclass(frozen=True)
class KllCopy:
    """A located copy: the ordered sides (a, b), min(a+b) always in a."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if set(self.a) & set(self.b) or len(self.a) != len(self.b):
            raise ContractViolation("copy sides must be disjoint and equal-sized")
        object.__setattr__(self, "a", tuple(sorted(self.a)))
        object.__setattr__(self, "b", tuple(sorted(self.b)))

    @property
    def ell(self) -> int:
        return len(self.a)

    def key(self) -> frozenset[frozenset[int]]:
        """Identity as an unordered {A, B} pair."""
        return frozenset((frozenset(self.a), frozenset(self.b)))


@dataclass(frozen=True)
class GoodnessParams:
    """Desk-scale thresholds for the two goodness conditions."""

    ell: int
    copy_threshold: int = 1
    degree_threshold: int = 1

    def __post_init__(self) -> None:
        if self.copy_threshold <= 0 or self.degree_threshold <= 0:
            raise ContractViolation("thresholds must be positive")


@dataclass(frozen=True)
class GoodnessReport:
    copies_found: int
    min_forced_degree: int | None  # None when condition (ii) is vacuous
    cond_i: bool
    cond_ii: bool
    cond_ii_vacuous: bool
    sampled_copies: int
    asymptotic_copy_threshold: float
    asymptotic_degree_threshold: float

    @property
    def passed(self) -> bool:
        return self.cond_i and self.cond_ii


def asymptotic_copy_threshold(n: int, k: int, ell: int) -> float:
    """n^(2*ell) / 2^(2^(10k)) as a float (underflows to 0 at desk scale)."""
    log2_val = 2 * ell * math.log2(max(n, 1)) - float(2 ** (10 * k))
    try:
        return 2.0**log2_val
    except OverflowError:
        return math.inf


def asymptotic_degree_threshold(n: int, k: int) -> float:
    """n^(k-1) / k^(4k)."""
    return float(n) ** (k - 1) / float(k) ** (4 * k)


# -- canonical partition tables ------------------------------------------


@lru_cache(maxsize=None)
def partition_tables(k: int, ell: int):
    """Canonical balanced bipartitions of 2*ell positions and their pattern.

    Partitions are keyed by the A side, which always contains position 0
    (fixing orientation and halving the space), enumerated in colex order
    of the remaining A positions.  For each partition the table lists the
    pattern edges as sorted position k-tuples plus their local colex rank
    among the C(2*ell, k) position subsets (for memoized probing).
    """
    if ell < k - 1:
        raise ContractViolation(f"ell={ell} < k-1={k - 1}")
    two_l = 2 * ell
    parts_a = []
    parts_b = []
    pat_pos = []
    pat_lrank = []
    for rest in combinations_colex(range(1, two_l), ell - 1):
        a = (0, *rest)
        b = tuple(sorted(set(range(two_l)) - set(a)))
        edges = []
        for one, other in ((a, b), (b, a)):
            for p in one:
                for t in combinations_colex(other, k - 1):
                    edges.append(tuple(sorted((p, *t))))
        parts_a.append(a)
        parts_b.append(b)
        pat_pos.append(edges)
        pat_lrank.append([sum(comb(p, i + 1) for i, p in enumerate(e)) for e in edges])
    return (
        np.array(parts_a, dtype=np.int64),
        np.array(parts_b, dtype=np.int64),
        np.array(pat_pos, dtype=np.int64),
        np.array(pat_lrank, dtype=np.int64),
        comb(two_l, k),
    )


@lru_cache(maxsize=None)
def comb_table(n: int, k: int) -> np.ndarray:
    """C(v, j) for v <= n, j <= k, as an int64 array (exact at these sizes)."""
    t = np.zeros((n + 1, k + 1), dtype=np.int64)
    for v in range(n + 1):
        for j in range(min(v, k) + 1):
            t[v, j] = comb(v, j)
    return t


# -- operations -----------------------------------------------------------


def spans_kll(
    g: KGraph, vertices: Sequence[int], ell: int, counter: ProbeCounter
) -> KllCopy | None:
    """First canonical balanced bipartition of the 2*ell vertices whose full
    pattern is present, or None.  Short-circuits on each missing edge."""
    vs = sorted(vertices)
    if len(vs) != 2 * ell or len(set(vs)) != 2 * ell:
        raise ContractViolation(f"need 2*ell={2 * ell} distinct vertices")
    parts_a, parts_b, pat_pos, _, _ = partition_tables(g.k, ell)
    for p in range(parts_a.shape[0]):
        ok = True
        for e in pat_pos[p]:
            if not is_edge(g, [vs[i] for i in e], counter):
                ok = False
                break
        if ok:
            a = tuple(vs[i] for i in parts_a[p])
            b = tuple(vs[i] for i in parts_b[p])
            return KllCopy(a, b)
    return None


def certify_copy(g: KGraph, copy: KllCopy, counter: ProbeCounter | None = None) -> bool:
    """Replay all pattern edges of a claimed copy against the graph."""
    counter = counter or ProbeCounter()
    for one, other in ((copy.a, copy.b), (copy.b, copy.a)):
        for v in one:
            for t in combinations_colex(other, g.k - 1):
                if not is_edge(g, (v, *t), counter):
                    return False
    return True


def _scan(g: KGraph, ell: int, sub0: np.ndarray, max_count: int, store: int):
    parts_a, parts_b, pat_pos, pat_lrank, n_local = partition_tables(g.k, ell)
    out_parts = np.full(store, -1, dtype=np.int64)
    out_subs = np.zeros((store, 2 * ell), dtype=np.int64)
    count, probes = _kernels._scan_copies(
        g.words,
        comb_table(g.n, g.k),
        g.n,
        g.k,
        sub0,
        pat_pos,
        pat_lrank,
        n_local,
        max_count,
        out_parts,
        out_subs,
    )
    copies = []
    for i in range(min(int(count), store)):
        p = out_parts[i]
        sub = out_subs[i]
        copies.append(
            KllCopy(
                tuple(int(sub[j]) for j in parts_a[p]),
                tuple(int(sub[j]) for j in parts_b[p]),
            )
        )
    return int(count), copies, int(probes)


def find_kll_exhaustive(g: KGraph, ell: int, counter: ProbeCounter) -> KllCopy | None:
    """Scan 2*ell-subsets in colex order; return the first certified copy."""
    if g.n < 2 * ell:
        return None
    sub0 = np.arange(2 * ell, dtype=np.int64)
    count, copies, probes = _scan(g, ell, sub0, max_count=1, store=1)
    counter.bump(probes)
    return copies[0] if count else None


def count_kll_copies(g: KGraph, ell: int, cap: int) -> int:
    """Number of unordered {A,B} copies, saturating at cap."""
    if g.n < 2 * ell or cap <= 0:
        return 0
    sub0 = np.arange(2 * ell, dtype=np.int64)
    count, _, _ = _scan(g, ell, sub0, max_count=cap, store=0)
    return count


def enumerate_kll_copies(g: KGraph, ell: int, cap: int = 1 << 20) -> list[KllCopy]:
    """All copies in colex order of their vertex sets, up to cap."""
    if g.n < 2 * ell:
        return []
    sub0 = np.arange(2 * ell, dtype=np.int64)
    _, copies, _ = _scan(g, ell, sub0, max_count=cap, store=cap)
    return copies


def _sample_copies(g: KGraph, ell: int, how_many: int, seed: int) -> list[KllCopy]:
    """Roughly uniform certified copies via random-start colex scans."""
    if g.n < 2 * ell:
        return []
    total = comb(g.n, 2 * ell)
    if g.n <= 12:
        copies = enumerate_kll_copies(g, ell)
        if len(copies) <= how_many:
            return copies
        picks = tape_words(derive_seed(seed, "copy-sample"), 0, how_many, len(copies))
        return list({copies[int(i)].key(): copies[int(i)] for i in picks}.values())
    seen: dict[frozenset, KllCopy] = {}
    starts = tape_words(derive_seed(seed, "copy-sample"), 0, how_many, total)
    from .core import unrank_subset

    for s in starts:
        sub0 = np.array(unrank_subset(int(s), 2 * ell, g.n), dtype=np.int64)
        count, copies, _ = _scan(g, ell, sub0, max_count=1, store=1)
        if not count:  # wrap to the colex start
            sub0 = np.arange(2 * ell, dtype=np.int64)
            count, copies, _ = _scan(g, ell, sub0, max_count=1, store=1)
        if count:
            seen[copies[0].key()] = copies[0]
    return list(seen.values())


def forced_degree(g: KGraph, u: int, X: Sequence[int], counter: ProbeCounter) -> int:
    """|N(u, X \\ {u})| by full (k-1)-subset enumeration (no short-circuit)."""
    pool = sorted(set(X) - {u})
    if len(pool) < g.k - 1:
        return 0
    return sum(
        1 for t in combinations_colex(pool, g.k - 1) if is_edge(g, (u, *t), counter)
    )


def audit_goodness(
    g: KGraph,
    params: GoodnessParams,
    sample_copies: int = 3,
    seed: int = 0,
    counter: ProbeCounter | None = None,
) -> GoodnessReport:
    """Evaluate both goodness conditions at the configured desk thresholds.

    Condition (i): at least copy_threshold copies exist (count saturates
    there).  Condition (ii): for each sampled certified copy, every vertex
    u must reach the degree threshold into N_A or N_B, where N_A/N_B are
    the vertices with a nonempty neighborhood in the copy's sides.
    """
    if params.ell < 2 * g.k - 3:
        raise ContractViolation(
            f"ell={params.ell} < 2k-3={2 * g.k - 3}: copies would not be uniquely colorable"
        )
    counter = counter or ProbeCounter()
    copies_found = count_kll_copies(g, params.ell, cap=params.copy_threshold)
    cond_i = copies_found >= params.copy_threshold

    sampled = _sample_copies(g, params.ell, sample_copies, seed) if copies_found else []
    if not sampled:
        return GoodnessReport(
            copies_found=copies_found,
            min_forced_degree=None,
            cond_i=cond_i,
            cond_ii=True,
            cond_ii_vacuous=True,
            sampled_copies=0,
            asymptotic_copy_threshold=asymptotic_copy_threshold(g.n, g.k, params.ell),
            asymptotic_degree_threshold=asymptotic_degree_threshold(g.n, g.k),
        )

    min_forced = None
    for copy in sampled:
        n_a = [v for v in range(g.n) if neighborhood_nonempty(g, v, copy.a, counter)]
        n_b = [v for v in range(g.n) if neighborhood_nonempty(g, v, copy.b, counter)]
        for u in range(g.n):
            d = max(
                forced_degree(g, u, n_a, counter), forced_degree(g, u, n_b, counter)
            )
            if min_forced is None or d < min_forced:
                min_forced = d
    cond_ii = min_forced >= params.degree_threshold
    return GoodnessReport(
        copies_found=copies_found,
        min_forced_degree=min_forced,
        cond_i=cond_i,
        cond_ii=cond_ii,
        cond_ii_vacuous=False,
        sampled_copies=len(sampled),
        asymptotic_copy_threshold=asymptotic_copy_threshold(g.n, g.k, params.ell),
        asymptotic_degree_threshold=asymptotic_degree_threshold(g.n, g.k),
    )
