"""Stateless local queries: a pure function of (graph, vertex, seed).

The local engine reads its randomness from a per-vertex block of a
counter-based word tape, so repeated or concurrently executed queries are
bit-identical — no memory survives between calls.
"""

from __future__ import annotations

from hypercolor import (
    BLOCKS,
    OracleConfig,
    PlantedSpec,
    RandomTape,
    collect_lca_coloring,
    lca_query,
    sample_planted,
    verify_coloring,
)


def main() -> None:
    cfg = OracleConfig(ell=3, stage2_sample_cap=10_000)
    g = sample_planted(PlantedSpec(40, 3, tuple(range(20)), seed=31))
    tape = RandomTape(seed=7, mode=BLOCKS)

    a1 = lca_query(g, 11, cfg, tape)
    for u in (3, 8, 11, 25):  # interleave other queries
        lca_query(g, u, cfg, tape)
    a2 = lca_query(g, 11, cfg, tape)
    print(f"repeat query on vertex 11 bit-identical: {a1 == a2}")
    print(f"  answer={a1.color} probes={a1.probes} path={a1.path}")

    seq, _ = collect_lca_coloring(g, cfg, tape)
    par, _ = collect_lca_coloring(g, cfg, tape, parallel=True)
    print(f"concurrent sweep equals sequential: {seq == par}")
    print(f"assembled coloring proper: {bool(verify_coloring(g, seq))}")


if __name__ == "__main__":
    main()
