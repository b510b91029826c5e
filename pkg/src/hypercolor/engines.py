"""Coloring engines: global deterministic colorer, per-vertex coloring
oracle, stateless average-case LCA, and the exhaustive lex-first fallback.

The oracle anchors "the first vertex" (index 0) to color 0: the lex-first
proper coloring must color it 0 because the complement of a proper
coloring is proper.  Stage 2 looks for a uniquely-colorable K_ll copy
whose coloring is forced by that anchor; stage 3 propagates the copy's
coloring to the queried vertex through a length-2 path.  Either stage
exhausts its tuple space (random samples up to a cap, then a full colex
sweep) before diverting to the fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels
from .core import (
    Coloring,
    KGraph,
    ProbeCounter,
    UNSET,
    neighborhood_nonempty,
    verify_coloring,
)
from .errors import CapacityError, ContractViolation, UnsatisfiableError
from .patterns import KllCopy, comb_table, find_kll_exhaustive, partition_tables
from .search import lexfirst_proper_coloring
from .tape import BLOCKS, RandomTape

PATH_STAGES = "stage2+stage3"
PATH_FALLBACK = "fallback"


@dataclass(frozen=True)
class OracleConfig:
    """Knobs for the oracle and LCA engines."""

    ell: int
    stage2_sample_cap: int = 10_000_000
    stage3_sample_cap: int = 1_000_000
    fallback_n_cap: int = 24
    #: keep a found copy and resample only the anchor witnesses (off by
    #: default: each attempt redraws the whole tuple)
    reuse_copy: bool = False

    def __post_init__(self) -> None:
        if self.stage2_sample_cap <= 0 or self.stage3_sample_cap <= 0:
            raise ContractViolation("sample caps must be positive")
        if not 0 < self.fallback_n_cap <= 30:
            raise ContractViolation("fallback_n_cap must be in 1..30")


@dataclass(frozen=True)
class OracleAnswer:
    color: int
    probes: int
    path: str
    tuples_sampled_stage2: int
    tuples_sampled_stage3: int


@dataclass(frozen=True)
class ColorResult:
    """Outcome of the deterministic global colorer."""

    coloring: Coloring
    path: str  # 'propagation' or 'fallback'
    copy: KllCopy | None
    probes: int


def color_exhaustive_lexfirst(g: KGraph, n_cap: int = 24) -> Coloring:
    """Lexicographically first proper coloring (vertex 0 most significant,
    fixed to color 0).  Exponential worst case; guarded by n_cap."""
    if g.n > n_cap:
        raise CapacityError(f"exhaustive search capped at n<={n_cap}, graph has n={g.n}")
    c = lexfirst_proper_coloring(g)
    if c is None:
        raise UnsatisfiableError("graph has no proper 2-coloring")
    return c


def color_deterministic(
    g: KGraph, cfg: OracleConfig, counter: ProbeCounter | None = None
) -> ColorResult:
    """Global colorer: exhaustive copy search, two propagation waves, and an
    exhaustive-search escape when propagation cannot finish."""
    counter = counter or ProbeCounter()
    start = counter.count
    copy = find_kll_exhaustive(g, cfg.ell, counter)
    if copy is not None:
        coloring = _propagate_from_copy(g, copy, counter)
        if coloring is not None:
            return ColorResult(coloring, "propagation", copy, counter.count - start)
    fallback = color_exhaustive_lexfirst(g, cfg.fallback_n_cap)
    counter.bump(g.num_ranks)  # the fallback reads the whole edge set
    return ColorResult(fallback, PATH_FALLBACK, copy, counter.count - start)


def _propagate_from_copy(
    g: KGraph, copy: KllCopy, counter: ProbeCounter
) -> Coloring | None:
    """Color A 0 and B 1, then two forcing waves.  None on a forcing
    conflict or any vertex left uncolored (both divert to the fallback)."""
    assign = np.full(g.n, UNSET, dtype=np.int8)
    assign[list(copy.a)] = 0
    assign[list(copy.b)] = 1
    # wave 1: neighbors of the copy's sides
    for u in range(g.n):
        if assign[u] != UNSET:
            continue
        sees_b = neighborhood_nonempty(g, u, copy.b, counter)
        sees_a = neighborhood_nonempty(g, u, copy.a, counter)
        if sees_a and sees_b:
            return None  # both colors forced: not 2-colorable via this copy
        if sees_b:
            assign[u] = 0
        elif sees_a:
            assign[u] = 1
    # wave 2: neighbors of everything colored so far
    c0 = [v for v in range(g.n) if assign[v] == 0]
    c1 = [v for v in range(g.n) if assign[v] == 1]
    for u in range(g.n):
        if assign[u] != UNSET:
            continue
        sees_c1 = neighborhood_nonempty(g, u, c1, counter)
        sees_c0 = neighborhood_nonempty(g, u, c0, counter)
        if sees_c0 and sees_c1:
            return None
        if sees_c1:
            assign[u] = 0
        elif sees_c0:
            assign[u] = 1
        else:
            return None  # unreachable vertex: propagation cannot finish
    return Coloring(assign)


def _run_stages(
    g: KGraph, u: int, cfg: OracleConfig, tape: RandomTape
) -> tuple[int, int, int, int, int]:
    """(status, color, probes, s2, s3) from the compiled two-stage search."""
    parts_a, parts_b, pat_pos, _, _ = partition_tables(g.k, cfg.ell)
    stream_seed, start = tape.stream_for(u)
    status, color, probes, s2, s3, consumed = _kernels._oracle(
        g.words,
        comb_table(g.n, g.k),
        g.n,
        g.k,
        cfg.ell,
        parts_a,
        parts_b,
        pat_pos,
        u,
        cfg.stage2_sample_cap,
        cfg.stage3_sample_cap,
        np.uint64(stream_seed),
        start,
        cfg.reuse_copy,
    )
    tape.advance(int(consumed))
    return int(status), int(color), int(probes), int(s2), int(s3)


def oracle_query(
    g: KGraph,
    u: int,
    cfg: OracleConfig,
    tape: RandomTape,
    counter: ProbeCounter | None = None,
) -> OracleAnswer:
    """Color u consistently with the lex-first proper coloring of g."""
    if not 0 <= u < g.n:
        raise ContractViolation(f"vertex {u} outside 0..{g.n - 1}")
    counter = counter or ProbeCounter()
    status, color, probes, s2, s3 = _run_stages(g, u, cfg, tape)
    if status == 0:
        counter.bump(probes)
        return OracleAnswer(color, probes, PATH_STAGES, s2, s3)
    # Step 7: exhaustive search for the lex-first coloring (reads every
    # possible edge, so it costs C(n,k) probes on top of the stage probes).
    fallback = color_exhaustive_lexfirst(g, cfg.fallback_n_cap)
    probes += g.num_ranks
    counter.bump(probes)
    return OracleAnswer(int(fallback.assignment[u]), probes, PATH_FALLBACK, s2, s3)


def lca_query(
    g: KGraph,
    u: int,
    cfg: OracleConfig,
    tape: RandomTape,
    counter: ProbeCounter | None = None,
) -> OracleAnswer:
    """Stateless LCA query: identical to the oracle except all randomness
    comes from the per-vertex tape block and the escape step returns 0
    unconditionally.  A pure function of (graph, u, tape seed)."""
    if not 0 <= u < g.n:
        raise ContractViolation(f"vertex {u} outside 0..{g.n - 1}")
    if tape.mode != BLOCKS:
        raise ContractViolation("lca_query requires a per-vertex-blocks tape")
    counter = counter or ProbeCounter()
    status, color, probes, s2, s3 = _run_stages(g, u, cfg, tape)
    counter.bump(probes)
    if status == 0:
        return OracleAnswer(color, probes, PATH_STAGES, s2, s3)
    return OracleAnswer(0, probes, PATH_FALLBACK, s2, s3)


def collect_oracle_coloring(
    g: KGraph,
    cfg: OracleConfig,
    tape: RandomTape,
    vertices: Iterable[int] | None = None,
) -> tuple[Coloring, list[OracleAnswer]]:
    """Query every vertex once and assemble the answers into a coloring."""
    answers: list[OracleAnswer] = []
    assign = np.full(g.n, UNSET, dtype=np.int8)
    for u in vertices if vertices is not None else range(g.n):
        a = oracle_query(g, u, cfg, tape)
        answers.append(a)
        assign[u] = a.color
    return Coloring(assign), answers


def collect_lca_coloring(
    g: KGraph,
    cfg: OracleConfig,
    tape: RandomTape,
    parallel: bool = False,
) -> tuple[Coloring, list[OracleAnswer]]:
    """Sweep all vertices through the LCA.  With parallel=True the queries
    run on a thread pool; in blocks mode the result is bitwise identical to
    the sequential sweep because each query only reads its own block."""
    if parallel:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            answers = list(
                pool.map(lambda u: lca_query(g, u, cfg, tape), range(g.n))
            )
    else:
        answers = [lca_query(g, u, cfg, tape) for u in range(g.n)]
    assign = np.array([a.color for a in answers], dtype=np.int8)
    return Coloring(assign), answers


def verify_sweep(g: KGraph, coloring: Coloring, answers: list[OracleAnswer] | None = None):
    """Properness check with per-vertex answer paths attached on failure."""
    res = verify_coloring(g, coloring)
    if res.status == "improper" and answers is not None and res.witness_edge:
        detail = {v: answers[v].path for v in res.witness_edge}
        return res, detail
    return res, None
