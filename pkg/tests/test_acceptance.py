"""End-to-end acceptance gate.

Eight headline guarantees, one test and one printed PASS/FAIL line each
(run with -rA or -s to see the lines).  Workloads are fixed-seed and
deterministic apart from wall-clock annotations.
"""

from __future__ import annotations

import time
from itertools import combinations, product

import numpy as np

from hypercolor import (
    BLOCKS,
    Coloring,
    ExperimentSpec,
    GadgetSpec,
    GoodnessParams,
    KGraph,
    OracleConfig,
    PlantedSpec,
    RandomTape,
    SHARED,
    audit_goodness,
    build_kll_gadget,
    collect_lca_coloring,
    collect_oracle_coloring,
    color_deterministic,
    color_exhaustive_lexfirst,
    derive_seed,
    lca_query,
    run_experiment,
    sample_planted,
    sample_uniform_2colorable_rejection,
    verify_coloring,
)
from hypercolor.bench import trial_instance
from hypercolor.engines import PATH_STAGES

BASE_SEED = 2  # fixed so every workload below is reproducible bit-for-bit
CAP = 500  # stage-2 sampling budget before the deterministic sweep takes over


def _report(num: int, name: str, ok: bool, detail: str, t0: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[ACCEPTANCE {num}] {name}: {status} ({detail}; {time.perf_counter() - t0:.0f}s)")
    assert ok, f"acceptance {num} {name}: {detail}"


def _cfg() -> OracleConfig:
    return OracleConfig(ell=3, stage2_sample_cap=CAP)


def test_01_oracle_sweep_consistency():
    """Querying every vertex assembles a proper coloring on planted instances."""
    t0 = time.perf_counter()
    spec = ExperimentSpec(
        engine="sweep", n_list=(40, 80), k=3, ell=3, trials=50,
        seeds=BASE_SEED, stage2_sample_cap=CAP, record_wall=False,
    )
    res = run_experiment(spec)
    bad = [(r.n, r.trial) for r in res.records if not r.proper]
    _report(
        1, "oracle sweep consistency", not bad,
        f"100 planted sweeps at n in (40, 80), improper/errored trials: {bad}", t0,
    )


def test_02_probe_count_flatness():
    """Per-query probe counts stay flat as the instance grows."""
    t0 = time.perf_counter()
    ladder = (40, 60, 80, 120)
    spec = ExperimentSpec(
        engine="oracle", n_list=ladder, k=3, ell=3, trials=20,
        seeds=BASE_SEED, stage2_sample_cap=CAP, record_wall=False,
    )
    res = run_experiment(spec)
    means = {n: float(np.mean(res.per_vertex_probes(n))) for n in ladder}
    inst_max: dict[int, list[int]] = {n: [] for n in ladder}
    for n in ladder:
        for trial in range(spec.trials):
            inst_max[n].append(
                max(r.probes for r in res.records if r.n == n and r.trial == trial)
            )
    max_means = {n: float(np.mean(inst_max[n])) for n in ladder}
    ratio = means[120] / means[40]
    step_ratios = [max_means[b] / max_means[a] for a, b in zip(ladder, ladder[1:])]
    ok = res.all_proper() and ratio <= 2.0 and all(r < 2.0 for r in step_ratios)
    _report(
        2, "probe-count flatness", ok,
        f"mean probes {means}, n=120/n=40 ratio {ratio:.2f} (need <= 2), "
        f"instance-max step ratios {[f'{r:.2f}' for r in step_ratios]} (need < 2)", t0,
    )


def _mixed_suite():
    """(label, graph, expect_propagation) triples: 100 instances total."""
    spec = ExperimentSpec(
        engine="deterministic", n_list=(60,), k=3, ell=3, trials=40,
        seeds=BASE_SEED, stage2_sample_cap=CAP,
    )
    for trial in range(40):
        g, _ = trial_instance(spec, 60, trial)
        yield "planted", g, True
    for i in range(20):
        yield "empty", KGraph.from_ranks(8 + i % 10, 3, np.array([], dtype=np.int64)), False
    for i in range(20):
        o = i % 14
        g = build_kll_gadget(GadgetSpec(3, 3, (o, o + 1, o + 2), (o + 3, o + 4, o + 5)), 20)
        yield "gadget", g, False
    full = build_kll_gadget(GadgetSpec(3, 3, (0, 1, 2), (3, 4, 5)), 12)
    ranks = np.nonzero(np.unpackbits(full.words.view(np.uint8), bitorder="little"))[0]
    for i in range(10):
        yield "gadget-minus-edge", KGraph.from_ranks(12, 3, np.delete(ranks, i)), False
    for i in range(10):
        n = 7 + i % 3
        g = sample_uniform_2colorable_rejection(n, 3, seed=derive_seed(BASE_SEED, i, "mixed-rej"))
        yield "uniform-tiny", g, False


def test_03_deterministic_colorer_totality():
    """The global colorer returns a proper coloring on a 100-instance mixed suite."""
    t0 = time.perf_counter()
    cfg = _cfg()
    improper: list[str] = []
    wrong_path: list[str] = []
    count = 0
    for label, g, expect_prop in _mixed_suite():
        count += 1
        res = color_deterministic(g, cfg)
        if not verify_coloring(g, res.coloring):
            improper.append(label)
        if expect_prop and res.path != "propagation":
            wrong_path.append(label)
    ok = count == 100 and not improper and not wrong_path
    _report(
        3, "deterministic colorer totality", ok,
        f"{count} instances, improper: {improper}, "
        f"exhaustive escape on pattern-rich members: {wrong_path}", t0,
    )


def test_04_brute_force_equivalence_tiny():
    """At n=7 every query escapes to exhaustive search and the assembled
    coloring equals the lexicographically first proper coloring exactly."""
    t0 = time.perf_counter()
    cfg = _cfg()
    improper = 0
    mismatched = 0
    all_fallback_trials = 0
    for trial in range(200):
        g = sample_uniform_2colorable_rejection(
            7, 3, seed=derive_seed(BASE_SEED, trial, "tiny-gen")
        )
        tape = RandomTape(derive_seed(BASE_SEED, trial, "tiny-tape"), mode=SHARED)
        coloring, answers = collect_oracle_coloring(g, cfg, tape)
        if not verify_coloring(g, coloring):
            improper += 1
        if all(a.path != PATH_STAGES for a in answers):
            all_fallback_trials += 1
            ref = color_exhaustive_lexfirst(g)
            if not np.array_equal(coloring.assignment, ref.assignment):
                mismatched += 1
    ok = improper == 0 and mismatched == 0
    _report(
        4, "brute-force equivalence at n=7", ok,
        f"200 trials, improper {improper}, all-escape trials {all_fallback_trials}, "
        f"mismatches vs lex-first {mismatched}", t0,
    )


def test_05_uniqueness_dichotomy():
    """Pattern gadgets have exactly 2 proper colorings at the unique-coloring
    side sizes and 6 at the smaller side size below the threshold."""
    t0 = time.perf_counter()
    results = {}
    for k, ell, expected in ((3, 3, 2), (4, 5, 2), (3, 2, 6)):
        two_l = 2 * ell
        g = build_kll_gadget(
            GadgetSpec(k, ell, tuple(range(ell)), tuple(range(ell, two_l))), two_l
        )
        found = sum(
            1
            for bits in product((0, 1), repeat=two_l)
            if verify_coloring(g, Coloring(np.array(bits, dtype=np.int8)))
        )
        results[(k, ell)] = (found, expected)
    ok = all(found == exp for found, exp in results.values())
    _report(5, "gadget coloring-count dichotomy", ok, f"counts {results}", t0)


def test_06_planted_model_statistics():
    """Crossing-set count matches brute enumeration and the empirical mean
    edge count sits at half the crossing sets."""
    t0 = time.perf_counter()
    n, k, S = 10, 3, (0, 2, 4, 6, 8)
    crossing = sum(
        1
        for e in combinations(range(n), k)
        if 0 < sum(v in S for v in e) < k
    )
    edges = [
        sample_planted(PlantedSpec(n=n, k=k, S=S, seed=derive_seed(BASE_SEED, s, "stats"))).edge_count
        for s in range(100)
    ]
    mean = float(np.mean(edges))
    ok = crossing == 100 and abs(mean - 50.0) <= 0.5
    _report(
        6, "planted-model statistics", ok,
        f"crossing sets {crossing} (expect 100), mean edges {mean:.2f} (expect 50 +/- 0.5)", t0,
    )


def test_07_stateless_local_queries():
    """Repeated and concurrent local queries are bit-identical."""
    t0 = time.perf_counter()
    cfg = _cfg()
    g = sample_planted(
        PlantedSpec(n=40, k=3, S=tuple(range(0, 40, 2)), seed=derive_seed(BASE_SEED, "lca-gen"))
    )
    tape = RandomTape(derive_seed(BASE_SEED, "lca-tape"), mode=BLOCKS)
    first = lca_query(g, 17, cfg, tape)
    repeats_ok = all(lca_query(g, 17, cfg, tape) == first for _ in range(99))
    seq, seq_answers = collect_lca_coloring(g, cfg, tape)
    par, par_answers = collect_lca_coloring(g, cfg, tape, parallel=True)
    sweep_ok = (
        np.array_equal(seq.assignment, par.assignment) and seq_answers == par_answers
    )
    ok = repeats_ok and sweep_ok
    _report(
        7, "stateless local queries", ok,
        f"100 repeats bit-identical: {repeats_ok}, "
        f"concurrent sweep equals sequential: {sweep_ok}", t0,
    )


def test_08_goodness_audit_frequency():
    """Nearly all planted instances pass both structural goodness conditions."""
    t0 = time.perf_counter()
    spec = ExperimentSpec(
        engine="deterministic", n_list=(60,), k=3, ell=3, trials=50,
        seeds=BASE_SEED, stage2_sample_cap=CAP,
    )
    params = GoodnessParams(ell=3, copy_threshold=1, degree_threshold=1)
    good = 0
    for trial in range(50):
        g, _ = trial_instance(spec, 60, trial)
        rep = audit_goodness(g, params, seed=derive_seed(BASE_SEED, 60, trial, "audit"))
        if rep.cond_i and rep.cond_ii and not rep.cond_ii_vacuous:
            good += 1
    ok = good >= 45
    _report(8, "goodness audit frequency", ok, f"{good}/50 good (need >= 45)", t0)
