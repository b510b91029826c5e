"""Probe-complexity scaling: mean probes per oracle query across a size ladder.

The headline property is that per-query probe counts stay flat as the
instance grows — the cost of a query is governed by pattern density, not n.
Emits the same CSV the `hypercolor bench` subcommand writes.
"""

from __future__ import annotations

from hypercolor import ExperimentSpec, run_experiment


def main() -> None:
    spec = ExperimentSpec(
        engine="oracle",
        n_list=(40, 60, 80),
        k=3,
        ell=3,
        trials=5,
        seeds=1,
        stage2_sample_cap=500,
        output="demo_out/scaling.csv",
        record_wall=False,
    )
    import pathlib

    pathlib.Path("demo_out").mkdir(exist_ok=True)
    res = run_experiment(spec)
    print(f"all colorings proper: {res.all_proper()}")
    print("per-n summaries (probes):")
    for r in res.summaries:
        print(f"  n={r.n:3d} {r.path:18s} {r.probes:>12,d}")


if __name__ == "__main__":
    main()
