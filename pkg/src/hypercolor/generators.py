"""Instance generators: planted model, exact-uniform rejection, K_ll gadgets."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .core import KGraph, combinations_colex
from .errors import ContractViolation, GenerationError
from .search import is_two_colorable
from .tape import derive_seed, tape_words


@dataclass(frozen=True)
class PlantedSpec:
    """Planted-bipartition random model: every k-set crossing (S, V\\S) is an
    edge independently with probability 1/2."""

    n: int
    k: int
    S: tuple[int, ...]
    seed: int

    def __post_init__(self) -> None:
        s = frozenset(self.S)
        if len(s) != len(self.S):
            raise ContractViolation("S has repeated vertices")
        if any(v < 0 or v >= self.n for v in s):
            raise ContractViolation("S has a vertex outside 0..n-1")
        if not 0 < len(s) < self.n:
            raise ContractViolation("both sides of the planted bipartition must be nonempty")
        object.__setattr__(self, "S", tuple(sorted(s)))


@dataclass(frozen=True)
class GadgetSpec:
    """Placement of a K_ll gadget: two disjoint ell-sets of host vertices."""

    k: int
    ell: int
    a_vertices: tuple[int, ...]
    b_vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        a, b = frozenset(self.a_vertices), frozenset(self.b_vertices)
        if self.ell < self.k - 1:
            raise ContractViolation(f"ell={self.ell} < k-1={self.k - 1}: gadget has no edges")
        if len(a) != self.ell or len(b) != self.ell:
            raise ContractViolation("A and B placements must each have ell distinct vertices")
        if a & b:
            raise ContractViolation("A and B placements must be disjoint")
        object.__setattr__(self, "a_vertices", tuple(sorted(a)))
        object.__setattr__(self, "b_vertices", tuple(sorted(b)))


def sample_planted(spec: PlantedSpec) -> KGraph:
    """Draw from the planted model, one stream bit per crossing k-set.

    Iterates all C(n,k) colex ranks in order; each crossing set consumes the
    next bit of the (seed, "planted")-derived stream, so resampling with the
    same spec is bit-identical.
    """
    n, k = spec.n, spec.k
    in_s = np.zeros(n, dtype=bool)
    in_s[list(spec.S)] = True

    # bits drawn lazily in chunks: one per crossing set, in rank order
    stream = derive_seed(spec.seed, "planted")
    crossing_ranks = []
    for r, subset in enumerate(combinations_colex(range(n), k)):
        inside = sum(1 for v in subset if in_s[v])
        if 0 < inside < k:
            crossing_ranks.append(r)
    bits = tape_words(stream, 0, len(crossing_ranks), 2)
    ranks = np.asarray(crossing_ranks, dtype=np.int64)[bits == 1]
    return KGraph.from_ranks(n, k, ranks)


def count_crossing_sets(n: int, k: int, s_size: int) -> int:
    """Number of k-sets meeting both sides: C(n,k) - C(|S|,k) - C(n-|S|,k)."""
    return comb(n, k) - comb(s_size, k) - comb(n - s_size, k)


def planted_coloring_sides(spec: PlantedSpec) -> np.ndarray:
    """The planted proper coloring: S gets 0, the complement 1."""
    a = np.ones(spec.n, dtype=np.int8)
    a[list(spec.S)] = 0
    return a


#: Rejection sampling is only exact-uniform if we can afford to test
#: 2-colorability exhaustively; cap the possible-edge count accordingly.
_REJECTION_MAX_POSSIBLE_EDGES = 256
_REJECTION_MAX_N = 12


def sample_uniform_2colorable_rejection(
    n: int, k: int, seed: int, max_attempts: int = 10**6
) -> KGraph:
    """Exactly uniform sample from the 2-colorable k-graphs on n vertices.

    Draws every possible edge with probability 1/2 and accepts the first
    2-colorable draw, so the output distribution is uniform on the accept
    set.  Feasible only at tiny n (exhaustive colorability test per draw).
    """
    total = comb(n, k)
    if n > _REJECTION_MAX_N or total > _REJECTION_MAX_POSSIBLE_EDGES:
        raise ContractViolation(
            f"rejection sampling capped at n<={_REJECTION_MAX_N} and "
            f"C(n,k)<={_REJECTION_MAX_POSSIBLE_EDGES}; got n={n}, C(n,k)={total}"
        )
    stream = derive_seed(seed, "uniform-rejection")
    cursor = 0
    for _ in range(max_attempts):
        bits = tape_words(stream, cursor, total, 2)
        cursor += total
        g = KGraph.from_ranks(n, k, np.nonzero(bits == 1)[0])
        if is_two_colorable(g):
            return g
    raise GenerationError(
        f"no 2-colorable draw in {max_attempts} attempts (n={n}, k={k}, seed={seed})"
    )


def build_kll_gadget(spec: GadgetSpec, n: int) -> KGraph:
    """The K_ll pattern placed on host vertices: every edge takes one vertex
    from one side and k-1 from the other, 2*ell*C(ell, k-1) edges total."""
    a, b = spec.a_vertices, spec.b_vertices
    if a[-1] >= n or b[-1] >= n:
        raise ContractViolation("gadget placement outside 0..n-1")
    edges = []
    for one, rest in ((a, b), (b, a)):
        for v in one:
            for t in combinations_colex(rest, spec.k - 1):
                edges.append((v, *t))
    return KGraph.from_edges(n, spec.k, edges)


def embed_union(base: KGraph, gadget: KGraph) -> KGraph:
    """Edge-set union of two graphs on the same vertex set."""
    if base.n != gadget.n or base.k != gadget.k:
        raise ContractViolation(
            f"cannot union ({base.n},{base.k}) with ({gadget.n},{gadget.k})"
        )
    return KGraph(base.n, base.k, base.words | gadget.words)
