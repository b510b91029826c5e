"""Generate random 2-colorable hypergraph instances and save them to disk.

Walks through the three generators: the planted-bipartition model (every
k-set crossing a fixed split is an edge with probability 1/2), exact-uniform
rejection sampling at tiny n, and hand-placed K_ll gadgets.
"""

from __future__ import annotations

import pathlib

from hypercolor import (
    Coloring,
    GadgetSpec,
    PlantedSpec,
    build_kll_gadget,
    embed_union,
    planted_coloring_sides,
    read_instance,
    sample_planted,
    sample_uniform_2colorable_rejection,
    verify_coloring,
    write_instance,
)

OUT = pathlib.Path("demo_out")
OUT.mkdir(exist_ok=True)


def main() -> None:
    # planted model: n=40, k=3, split 20/20
    spec = PlantedSpec(n=40, k=3, S=tuple(range(20)), seed=2024)
    g = sample_planted(spec)
    print(f"planted: n={g.n} k={g.k} edges={g.edge_count}")
    planted = Coloring(planted_coloring_sides(spec))
    print("planted split is a proper coloring:", bool(verify_coloring(g, planted)))

    path = OUT / "planted_n40.hgr"
    write_instance(g, path, metadata={"n": g.n, "k": g.k, "seed": spec.seed})
    assert read_instance(path) == g
    print(f"round-tripped through {path}")

    # exact-uniform 2-colorable graph at tiny n (rejection sampling)
    tiny = sample_uniform_2colorable_rejection(7, 3, seed=5)
    print(f"\nuniform tiny: n=7 edges={tiny.edge_count}")

    # a uniquely 2-colorable gadget embedded in noise
    gadget = build_kll_gadget(GadgetSpec(k=3, ell=3, a_vertices=(0, 1, 2),
                                         b_vertices=(3, 4, 5)), n=12)
    noisy = embed_union(gadget, sample_planted(PlantedSpec(12, 3, (0, 1, 2, 3, 4, 5), 7)))
    print(f"\ngadget: edges={gadget.edge_count}  gadget+noise: edges={noisy.edge_count}")
    write_instance(noisy, OUT / "gadget_noise.hgr")


if __name__ == "__main__":
    main()
