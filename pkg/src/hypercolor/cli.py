"""Command-line interface.

Subcommands: generate, color, oracle, lca, sweep, audit, bench.
Exit codes: 0 success, 1 verification failure, 2 capacity or parse error.
The HYPERCOLOR_SEED environment variable overrides --seed when set.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from .bench import CSV_COLUMNS, ExperimentSpec, run_experiment
from .core import ProbeCounter, verify_coloring
from .engines import (
    OracleConfig,
    collect_lca_coloring,
    collect_oracle_coloring,
    color_deterministic,
    lca_query,
    oracle_query,
)
from .errors import CapacityError, ContractViolation, HgrParseError, UnsatisfiableError
from .generators import PlantedSpec, sample_planted
from .hgr import read_instance, write_instance
from .patterns import GoodnessParams, audit_goodness
from .tape import BLOCKS, SHARED, RandomTape

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CAPACITY = 2


def _add_common(p: argparse.ArgumentParser, need_input: bool = True) -> None:
    if need_input:
        p.add_argument("--input", required=True, help="instance file (HGR1 format)")
    p.add_argument("--ell", type=int, default=3, help="side size of the K_ll pattern")
    p.add_argument("--seed", type=int, default=0, help="random tape seed")
    p.add_argument("--tape-mode", choices=(SHARED, BLOCKS), default=SHARED)
    p.add_argument("--stage2-cap", type=int, default=10_000_000)
    p.add_argument("--stage3-cap", type=int, default=1_000_000)
    p.add_argument("--fallback-cap", type=int, default=24)
    p.add_argument("--stats-out", default=None, help="append a stats CSV line to this file")


def _config(args: argparse.Namespace) -> OracleConfig:
    return OracleConfig(
        ell=args.ell,
        stage2_sample_cap=args.stage2_cap,
        stage3_sample_cap=args.stage3_cap,
        fallback_n_cap=args.fallback_cap,
    )


def _seed(args: argparse.Namespace) -> int:
    env = os.environ.get("HYPERCOLOR_SEED")
    return int(env) if env is not None else args.seed


def _emit_stats(path: str | None, row: list[object]) -> None:
    if not path:
        return
    new = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        if new:
            w.writerow(CSV_COLUMNS)
        w.writerow(row)


def _stats_row(engine, g, ell, seed, vertex, probes, wall, path_taken, proper):
    return [engine, g.n, g.k, ell, seed, 0, vertex, probes, wall,
            path_taken, "true" if proper else "false"]


def cmd_generate(args: argparse.Namespace) -> int:
    seed = _seed(args)
    s_size = args.s_size if args.s_size is not None else args.n // 2
    spec = PlantedSpec(n=args.n, k=args.k, S=tuple(range(s_size)), seed=seed)
    g = sample_planted(spec)
    s_csv = ",".join(map(str, spec.S))
    write_instance(
        g, args.output, comment=f"planted n={spec.n} k={spec.k} S={s_csv} seed={seed}"
    )
    print(args.output)
    return EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    g = read_instance(args.input)
    t0 = time.perf_counter_ns()
    res = color_deterministic(g, _config(args))
    wall = time.perf_counter_ns() - t0
    proper = bool(verify_coloring(g, res.coloring))
    print(res.coloring.bits())
    _emit_stats(args.stats_out, _stats_row(
        "deterministic", g, args.ell, _seed(args), "ALL", res.probes, wall, res.path, proper))
    return EXIT_OK if proper else EXIT_VERIFY


def cmd_point_query(args: argparse.Namespace, engine: str) -> int:
    g = read_instance(args.input)
    seed = _seed(args)
    if engine == "lca":
        tape = RandomTape(seed, mode=BLOCKS)
        query = lca_query
    else:
        tape = RandomTape(seed, mode=args.tape_mode)
        query = oracle_query
    t0 = time.perf_counter_ns()
    a = query(g, args.vertex, _config(args), tape)
    wall = time.perf_counter_ns() - t0
    print(a.color)
    _emit_stats(args.stats_out, _stats_row(
        engine, g, args.ell, seed, str(args.vertex), a.probes, wall, a.path, True))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    g = read_instance(args.input)
    seed = _seed(args)
    cfg = _config(args)
    t0 = time.perf_counter_ns()
    if args.tape_mode == BLOCKS:
        coloring, answers = collect_lca_coloring(g, cfg, RandomTape(seed, mode=BLOCKS))
    else:
        coloring, answers = collect_oracle_coloring(g, cfg, RandomTape(seed, mode=SHARED))
    wall = time.perf_counter_ns() - t0
    proper = bool(verify_coloring(g, coloring))
    print(coloring.bits())
    _emit_stats(args.stats_out, _stats_row(
        "sweep", g, args.ell, seed, "ALL", sum(a.probes for a in answers), wall,
        "stages+fallback", proper))
    return EXIT_OK if proper else EXIT_VERIFY


def cmd_audit(args: argparse.Namespace) -> int:
    g = read_instance(args.input)
    seed = _seed(args)
    params = GoodnessParams(
        ell=args.ell,
        copy_threshold=args.copy_threshold,
        degree_threshold=args.degree_threshold,
    )
    rep = audit_goodness(g, params, seed=seed)
    mfd = "" if rep.min_forced_degree is None else rep.min_forced_degree
    line = (
        f"{g.n},{g.k},{args.ell},{rep.copies_found},{mfd},"
        f"{str(rep.cond_i).lower()},{str(rep.cond_ii).lower()},{seed}"
    )
    print(line)
    if args.stats_out:
        with open(args.stats_out, "a") as f:
            f.write(line + "\n")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        engine=args.engine,
        n_list=tuple(args.n_list),
        k=args.k,
        ell=args.ell,
        trials=args.trials,
        seeds=_seed(args),
        planted_fraction=args.planted_fraction,
        output=args.output,
        stage2_sample_cap=args.stage2_cap,
        stage3_sample_cap=args.stage3_cap,
        fallback_n_cap=args.fallback_cap,
        record_wall=not args.no_wall,
    )
    result = run_experiment(spec)
    for s in result.summaries:
        print(",".join(s.row()))
    return EXIT_OK if result.all_proper() else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hypercolor",
        description="2-coloring engines for k-uniform hypergraphs: a global "
        "deterministic colorer, a per-vertex coloring oracle, and a stateless "
        "local query algorithm, plus generators and a benchmark harness.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a planted instance and write it")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--s-size", type=int, default=None, help="planted side size (default n//2)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", required=True)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("color", help="deterministic global coloring")
    _add_common(c)
    c.set_defaults(func=cmd_color)

    o = sub.add_parser("oracle", help="color one vertex via the coloring oracle")
    _add_common(o)
    o.add_argument("--vertex", type=int, required=True)
    o.set_defaults(func=lambda a: cmd_point_query(a, "oracle"))

    l = sub.add_parser("lca", help="color one vertex via the stateless local algorithm")
    _add_common(l)
    l.add_argument("--vertex", type=int, required=True)
    l.set_defaults(func=lambda a: cmd_point_query(a, "lca"))

    s = sub.add_parser("sweep", help="query every vertex and verify the assembled coloring")
    _add_common(s)
    s.set_defaults(func=cmd_sweep)

    a = sub.add_parser("audit", help="audit the two goodness conditions; CSV line output")
    _add_common(a)
    a.add_argument("--copy-threshold", type=int, default=1)
    a.add_argument("--degree-threshold", type=int, default=1)
    a.set_defaults(func=cmd_audit)

    b = sub.add_parser("bench", help="run a benchmark ladder and write CSV")
    b.add_argument("--engine", choices=("deterministic", "oracle", "lca", "sweep"), default="oracle")
    b.add_argument("--n-list", type=int, nargs="+", required=True)
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--ell", type=int, default=3)
    b.add_argument("--trials", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--planted-fraction", type=float, default=0.5)
    b.add_argument("--output", default=None)
    b.add_argument("--stage2-cap", type=int, default=10_000_000)
    b.add_argument("--stage3-cap", type=int, default=1_000_000)
    b.add_argument("--fallback-cap", type=int, default=24)
    b.add_argument("--no-wall", action="store_true", help="write 0 wall_nanos for byte-identical reruns")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HgrParseError, CapacityError, UnsatisfiableError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
