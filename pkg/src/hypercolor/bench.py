"""Reproducible experiment harness: instance batches, engine runs, CSV output.

CSV schema (fixed column order)::

    engine,n,k,ell,seed,trial,vertex,probes,wall_nanos,path,proper

One row per (instance, vertex) — the deterministic engine writes a single
``vertex=ALL`` row per instance — plus per-n summary rows flagged
``vertex=SUMMARY`` whose ``path`` column names the statistic (mean, median,
max, p95, instance_max_mean).  Rows are emitted in (n, trial, vertex)
order, so a run is deterministic given the ExperimentSpec; wall_nanos is excluded
from the determinism contract and can be suppressed entirely.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Coloring, KGraph, verify_coloring
from .engines import (
    ColorResult,
    OracleConfig,
    collect_lca_coloring,
    collect_oracle_coloring,
    color_deterministic,
    verify_sweep,
)
from .errors import CapacityError, ContractViolation, UnsatisfiableError
from .generators import PlantedSpec, sample_planted
from .hgr import read_instance, write_instance  # re-exported for convenience
from .tape import BLOCKS, SHARED, RandomTape, derive_seed

__all__ = [
    "CSV_COLUMNS",
    "ExperimentSpec",
    "ExperimentResult",
    "Record",
    "run_experiment",
    "verify_sweep",
    "read_instance",
    "write_instance",
]

CSV_COLUMNS = (
    "engine",
    "n",
    "k",
    "ell",
    "seed",
    "trial",
    "vertex",
    "probes",
    "wall_nanos",
    "path",
    "proper",
)

ENGINES = ("deterministic", "oracle", "lca", "sweep")


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment: an engine run over a ladder of planted instance sizes."""

    engine: str
    n_list: tuple[int, ...]
    k: int
    ell: int
    trials: int
    seeds: int  # base seed; per-trial seeds are derived from it
    planted_fraction: float = 0.5
    output: str | None = None
    stage2_sample_cap: int = 10_000_000
    stage3_sample_cap: int = 1_000_000
    fallback_n_cap: int = 24
    #: write 0 for wall_nanos so repeated runs are byte-identical
    record_wall: bool = True

    def __post_init__(self) -> None:
        if self.engine not in ENGINES:
            raise ContractViolation(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if not self.n_list:
            raise ContractViolation("n_list must be nonempty")
        if self.trials < 1:
            raise ContractViolation("trials must be >= 1")
        if not 0.25 <= self.planted_fraction <= 0.5:
            raise ContractViolation("planted_fraction must be in [1/4, 1/2]")
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))

    def oracle_config(self) -> OracleConfig:
        return OracleConfig(
            ell=self.ell,
            stage2_sample_cap=self.stage2_sample_cap,
            stage3_sample_cap=self.stage3_sample_cap,
            fallback_n_cap=self.fallback_n_cap,
        )


@dataclass(frozen=True)
class Record:
    """One CSV row."""

    engine: str
    n: int
    k: int
    ell: int
    seed: int
    trial: int
    vertex: str  # index as text, or ALL / SUMMARY
    probes: int
    wall_nanos: int
    path: str
    proper: bool

    def row(self) -> list[str]:
        return [
            self.engine,
            str(self.n),
            str(self.k),
            str(self.ell),
            str(self.seed),
            str(self.trial),
            self.vertex,
            str(self.probes),
            str(self.wall_nanos),
            self.path,
            "true" if self.proper else "false",
        ]


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    records: list[Record]
    summaries: list[Record]

    def per_vertex_probes(self, n: int) -> np.ndarray:
        return np.array(
            [r.probes for r in self.records if r.n == n and r.vertex not in ("SUMMARY",)],
            dtype=np.int64,
        )

    def all_proper(self) -> bool:
        return all(r.proper for r in self.records)


def trial_instance(spec: ExperimentSpec, n: int, trial: int) -> tuple[KGraph, PlantedSpec]:
    """The planted instance for one trial; S is the even vertices (the model
    is label-symmetric, so a fixed S loses no generality, and interleaving
    the sides keeps both represented in every prefix of the vertex order)."""
    s_size = max(1, min(n - 1, round(spec.planted_fraction * n)))
    gen_seed = derive_seed(spec.seeds, n, trial, "gen")
    pspec = PlantedSpec(
        n=n, k=spec.k, S=tuple(range(0, 2 * s_size, 2)), seed=gen_seed
    )
    return sample_planted(pspec), pspec


def _run_trial(
    spec: ExperimentSpec, g: KGraph, n: int, trial: int
) -> list[Record]:
    cfg = spec.oracle_config()
    tape_seed = derive_seed(spec.seeds, n, trial, "tape")
    clock = time.perf_counter_ns if spec.record_wall else (lambda: 0)
    t0 = clock()
    try:
        if spec.engine == "deterministic":
            res: ColorResult = color_deterministic(g, cfg)
            wall = clock() - t0
            proper = bool(verify_coloring(g, res.coloring))
            return [
                Record(
                    spec.engine, n, spec.k, spec.ell, tape_seed, trial,
                    "ALL", res.probes, wall, res.path, proper,
                )
            ]
        if spec.engine == "lca":
            tape = RandomTape(tape_seed, mode=BLOCKS)
            coloring, answers = collect_lca_coloring(g, cfg, tape)
        else:  # oracle and sweep both query every vertex on a shared tape
            tape = RandomTape(tape_seed, mode=SHARED)
            coloring, answers = collect_oracle_coloring(g, cfg, tape)
        wall = clock() - t0
        proper = bool(verify_coloring(g, coloring))
        per_vertex_wall = wall // max(1, g.n)
        return [
            Record(
                spec.engine, n, spec.k, spec.ell, tape_seed, trial,
                str(u), a.probes, per_vertex_wall, a.path, proper,
            )
            for u, a in enumerate(answers)
        ]
    except (CapacityError, UnsatisfiableError) as exc:
        wall = clock() - t0
        kind = "capacity_error" if isinstance(exc, CapacityError) else "unsat_error"
        return [
            Record(
                spec.engine, n, spec.k, spec.ell, tape_seed, trial,
                "ALL", 0, wall, kind, False,
            )
        ]


def _summaries(spec: ExperimentSpec, n: int, trial_records: list[list[Record]]) -> list[Record]:
    probes = np.array(
        [r.probes for rs in trial_records for r in rs if "error" not in r.path],
        dtype=np.int64,
    )
    instance_max = np.array(
        [max(r.probes for r in rs) for rs in trial_records if rs], dtype=np.int64
    )
    if probes.size == 0:
        probes = np.zeros(1, dtype=np.int64)
    stats = {
        "mean": float(np.mean(probes)),
        "median": float(np.median(probes)),
        "max": float(np.max(probes)),
        "p95": float(np.percentile(probes, 95)),
        "instance_max_mean": float(np.mean(instance_max)) if instance_max.size else 0.0,
    }
    ok = all(r.proper for rs in trial_records for r in rs)
    return [
        Record(
            spec.engine, n, spec.k, spec.ell, spec.seeds, -1,
            "SUMMARY", int(round(v)), 0, name, ok,
        )
        for name, v in stats.items()
    ]


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Run the full ladder and (optionally) write the CSV.

    Instances are generated from seeds derived as (base, n, trial, "gen");
    engine randomness uses (base, n, trial, "tape").  Rows appear in
    (n, trial, vertex) order with the per-n summary block after each n.
    """
    records: list[Record] = []
    summaries: list[Record] = []
    ordered_rows: list[Record] = []
    for n in spec.n_list:
        per_trial: list[list[Record]] = []
        for trial in range(spec.trials):
            g, _ = trial_instance(spec, n, trial)
            rs = _run_trial(spec, g, n, trial)
            per_trial.append(rs)
            records.extend(rs)
            ordered_rows.extend(rs)
        s = _summaries(spec, n, per_trial)
        summaries.extend(s)
        ordered_rows.extend(s)
    if spec.output:
        _write_csv(spec.output, ordered_rows)
    return ExperimentResult(spec, records, summaries)


def _write_csv(path: str | os.PathLike, rows: Sequence[Record]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow(r.row())
