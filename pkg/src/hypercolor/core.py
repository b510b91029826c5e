"""k-uniform hypergraphs with probe-counted O(1) edge membership.

Vertices are integers ``0..n-1``.  The edge set is a dense bitset indexed
by the colex rank of each k-subset, so a membership probe is a rank
computation plus one bit test.  Memory is ``C(n,k)`` bits; construction is
rejected when that exceeds ``BITSET_CAP_BITS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, ContractViolation

#: Hard cap on the uniformity k.
MAX_K = 8

#: Default cap on bitset size (bits).  C(120,5) fits; C(1000,5) does not.
BITSET_CAP_BITS = 2**33

#: Sentinel for an uncolored vertex.
UNSET = -1


def rank_subset(vertices: Sequence[int]) -> int:
    """Colex rank of a strictly increasing k-tuple: sum of C(v_i, i+1)."""
    prev = -1
    r = 0
    for i, v in enumerate(vertices):
        if v <= prev:
            raise ContractViolation(f"vertices must be strictly increasing, got {tuple(vertices)}")
        prev = v
        r += comb(v, i + 1)
    return r


def unrank_subset(rank: int, k: int, n: int) -> tuple[int, ...]:
    """Inverse of rank_subset over k-subsets of 0..n-1."""
    if not 0 <= rank < comb(n, k):
        raise ContractViolation(f"rank {rank} out of range for C({n},{k})")
    out = [0] * k
    r = rank
    v = n - 1
    for j in range(k, 0, -1):
        # largest v with C(v, j) <= r
        while comb(v, j) > r:
            v -= 1
        out[j - 1] = v
        r -= comb(v, j)
    return tuple(out)


def combinations_colex(items: Sequence[int], r: int) -> Iterator[tuple[int, ...]]:
    """Yield r-subsets of items (in the given order) in colex order of indices."""
    m = len(items)
    if r < 0 or r > m:
        return
    if r == 0:
        yield ()
        return
    idx = list(range(r))
    while True:
        yield tuple(items[i] for i in idx)
        # colex successor: bump the lowest index with room above it
        j = 0
        while j < r:
            limit = idx[j + 1] if j < r - 1 else m
            if idx[j] + 1 < limit:
                break
            j += 1
        if j == r:
            return
        idx[j] += 1
        for i in range(j):
            idx[i] = i


class ProbeCounter:
    """Counts edge-membership queries.  One increment per probe, repeats included."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def bump(self, by: int = 1) -> None:
        self.count += by

    def reset(self) -> None:
        self.count = 0

    def __repr__(self) -> str:
        return f"ProbeCounter(count={self.count})"


class KGraph:
    """Immutable k-uniform hypergraph on vertices 0..n-1.

    The edge bitset lives in a read-only uint64 array; bit r is set iff the
    k-subset with colex rank r is an edge.
    """

    __slots__ = ("n", "k", "_words", "_edge_count")

    def __init__(self, n: int, k: int, words: np.ndarray):
        if k < 2 or k > MAX_K:
            raise ContractViolation(f"k must be in 2..{MAX_K}, got {k}")
        if n < 0:
            raise ContractViolation(f"n must be non-negative, got {n}")
        nbits = comb(n, k)
        if nbits > BITSET_CAP_BITS:
            raise CapacityError(
                f"edge bitset needs C({n},{k})={nbits} bits, cap is {BITSET_CAP_BITS}"
            )
        nwords = (nbits + 63) // 64
        if words.dtype != np.uint64 or words.shape != (nwords,):
            raise ContractViolation("words must be a uint64 array of exactly ceil(C(n,k)/64) words")
        self.n = n
        self.k = k
        w = np.array(words, dtype=np.uint64)  # private copy, then freeze
        w.setflags(write=False)
        self._words = w
        self._edge_count = int.from_bytes(w.tobytes(), "little").bit_count()

    # -- construction -----------------------------------------------------

    @classmethod
    def empty(cls, n: int, k: int) -> "KGraph":
        nbits = comb(n, k)
        if nbits > BITSET_CAP_BITS:
            raise CapacityError(
                f"edge bitset needs C({n},{k})={nbits} bits, cap is {BITSET_CAP_BITS}"
            )
        return cls(n, k, np.zeros((nbits + 63) // 64, dtype=np.uint64))

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Sequence[int]]) -> "KGraph":
        ranks = []
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise ContractViolation(f"edge {tuple(e)} is not a {k}-set")
            if t[0] < 0 or t[-1] >= n:
                raise ContractViolation(f"edge {t} has a vertex outside 0..{n - 1}")
            ranks.append(rank_subset(t))
        return cls.from_ranks(n, k, ranks)

    @classmethod
    def from_ranks(cls, n: int, k: int, ranks: Iterable[int]) -> "KGraph":
        nbits = comb(n, k)
        if nbits > BITSET_CAP_BITS:
            raise CapacityError(
                f"edge bitset needs C({n},{k})={nbits} bits, cap is {BITSET_CAP_BITS}"
            )
        words = np.zeros((nbits + 63) // 64, dtype=np.uint64)
        r = np.fromiter(ranks, dtype=np.int64)
        if r.size:
            if r.min() < 0 or r.max() >= nbits:
                raise ContractViolation("edge rank out of range")
            np.bitwise_or.at(words, r >> 6, np.uint64(1) << (r & 63).astype(np.uint64))
        return cls(n, k, words)

    # -- queries ----------------------------------------------------------

    @property
    def num_ranks(self) -> int:
        return comb(self.n, self.k)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def words(self) -> np.ndarray:
        """Read-only view of the bitset words (for kernels and IO)."""
        return self._words

    def has_rank(self, r: int) -> bool:
        return bool((int(self._words[r >> 6]) >> (r & 63)) & 1)

    def edge_ranks(self) -> np.ndarray:
        """Colex ranks of all edges, ascending."""
        bits = np.unpackbits(self._words.view(np.uint8), bitorder="little")
        return np.nonzero(bits[: self.num_ranks])[0]

    def edges(self) -> Iterator[tuple[int, ...]]:
        """All edges as sorted tuples, in colex-rank order."""
        for r in self.edge_ranks():
            yield unrank_subset(int(r), self.k, self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and np.array_equal(self._words, other._words)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"KGraph(n={self.n}, k={self.k}, edges={self.edge_count})"


class Coloring:
    """Total or partial 0/1 vertex coloring; UNSET marks uncolored vertices."""

    __slots__ = ("assignment",)

    def __init__(self, assignment: np.ndarray | Sequence[int]):
        a = np.asarray(assignment, dtype=np.int8)
        if a.ndim != 1 or not np.all(np.isin(a, (0, 1, UNSET))):
            raise ContractViolation("assignment must be a 1-d array over {0, 1, UNSET}")
        self.assignment = a

    @classmethod
    def unset(cls, n: int) -> "Coloring":
        return cls(np.full(n, UNSET, dtype=np.int8))

    @classmethod
    def from_sides(cls, n: int, side1: Iterable[int]) -> "Coloring":
        """All vertices 0 except those in side1, which get 1."""
        a = np.zeros(n, dtype=np.int8)
        a[list(side1)] = 1
        return cls(a)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def is_total(self) -> bool:
        return bool(np.all(self.assignment != UNSET))

    def flip(self) -> "Coloring":
        a = self.assignment.copy()
        m = a != UNSET
        a[m] = 1 - a[m]
        return Coloring(a)

    def bits(self) -> str:
        """The coloring as a bit string, vertex 0 first ('u' for unset)."""
        return "".join("u" if c == UNSET else str(c) for c in self.assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    def __repr__(self) -> str:
        return f"Coloring({self.bits()})"


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of verify_coloring.  status is 'proper', 'improper' or 'incomplete'."""

    status: str
    witness_edge: tuple[int, ...] | None = None
    witness_vertex: int | None = None

    def __bool__(self) -> bool:
        return self.status == "proper"


def is_edge(g: KGraph, vertices: Sequence[int], counter: ProbeCounter) -> bool:
    """Probe-counted membership test; accepts the k vertices in any order."""
    t = sorted(vertices)
    if len(t) != g.k or any(t[i] == t[i + 1] for i in range(len(t) - 1)):
        raise ContractViolation(f"query {tuple(vertices)} is not a set of {g.k} distinct vertices")
    if t[0] < 0 or t[-1] >= g.n:
        raise ContractViolation(f"query {tuple(vertices)} has a vertex outside 0..{g.n - 1}")
    counter.bump()
    return g.has_rank(rank_subset(t))


def verify_coloring(g: KGraph, c: Coloring) -> VerifyResult:
    """Check properness: every edge must contain two distinctly colored vertices.

    An edge that is fully colored with a single color is an improper witness;
    otherwise any unset vertex makes the result incomplete.
    """
    if c.n != g.n:
        raise ContractViolation(f"coloring has {c.n} vertices, graph has {g.n}")
    a = c.assignment
    for e in g.edges():
        cols = a[list(e)]
        if np.any(cols == UNSET):
            continue
        if np.all(cols == cols[0]):
            return VerifyResult("improper", witness_edge=e)
    if not c.is_total():
        v = int(np.argmax(a == UNSET))
        return VerifyResult("incomplete", witness_vertex=v)
    return VerifyResult("proper")


def neighborhood_nonempty(
    g: KGraph, v: int, S: Iterable[int], counter: ProbeCounter
) -> bool:
    """True iff some (k-1)-subset of S forms an edge with v.

    Short-circuits on the first hit, so at most C(|S|, k-1) probes are made.
    S smaller than k-1 gives False with zero probes.  v is dropped from S if
    present, so N(v, S) never considers degenerate tuples.
    """
    pool = sorted(set(S) - {v})
    if len(pool) < g.k - 1:
        return False
    for t in combinations_colex(pool, g.k - 1):
        if is_edge(g, (v, *t), counter):
            return True
    return False
