"""Instance generators: planted model statistics, uniform rejection, gadgets."""

from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest

from hypercolor import (
    Coloring,
    ContractViolation,
    GadgetSpec,
    KGraph,
    PlantedSpec,
    build_kll_gadget,
    count_crossing_sets,
    embed_union,
    is_two_colorable,
    planted_coloring_sides,
    sample_planted,
    sample_uniform_2colorable_rejection,
    verify_coloring,
)


def brute_crossing(n, k, S):
    S = set(S)
    return sum(
        1
        for e in itertools.combinations(range(n), k)
        if 0 < len(S & set(e)) < k
    )


class TestPlanted:
    def test_crossing_count_formula(self):
        for n, k, s in ((10, 3, 5), (8, 3, 3), (9, 4, 4), (7, 2, 2)):
            assert count_crossing_sets(n, k, s) == brute_crossing(n, k, range(s))
        assert count_crossing_sets(10, 3, 5) == 100

    def test_only_crossing_edges_sampled(self):
        spec = PlantedSpec(n=12, k=3, S=tuple(range(6)), seed=3)
        g = sample_planted(spec)
        S = set(spec.S)
        for e in g.edges():
            inside = len(S & set(e))
            assert 0 < inside < 3

    def test_mean_edge_count(self):
        # each of the 100 crossing 3-sets at n=10, |S|=5 appears w.p. 1/2
        counts = [
            sample_planted(PlantedSpec(10, 3, tuple(range(5)), seed)).edge_count
            for seed in range(100)
        ]
        assert abs(np.mean(counts) - 50.0) <= 0.5

    def test_resampling_bit_identical(self):
        spec = PlantedSpec(n=14, k=3, S=tuple(range(7)), seed=99)
        assert sample_planted(spec) == sample_planted(spec)

    def test_different_seeds_differ(self):
        a = sample_planted(PlantedSpec(14, 3, tuple(range(7)), 1))
        b = sample_planted(PlantedSpec(14, 3, tuple(range(7)), 2))
        assert a != b

    def test_planted_sides_proper(self):
        spec = PlantedSpec(n=16, k=3, S=tuple(range(8)), seed=5)
        g = sample_planted(spec)
        c = Coloring(planted_coloring_sides(spec))
        assert verify_coloring(g, c).status == "proper"

    def test_edge_indicators_uncorrelated(self):
        # two fixed crossing sets: empirical covariance of their indicators
        # over many seeds should vanish (independence in the model)
        from hypercolor import rank_subset

        r1 = rank_subset((0, 1, 4))
        r2 = rank_subset((2, 3, 7))
        x = []
        y = []
        for seed in range(4000):
            g = sample_planted(PlantedSpec(8, 3, tuple(range(4)), seed))
            x.append(g.has_rank(r1))
            y.append(g.has_rank(r2))
        x = np.array(x, dtype=float)
        y = np.array(y, dtype=float)
        assert abs(x.mean() - 0.5) < 0.03 and abs(y.mean() - 0.5) < 0.03
        cov = float(np.mean(x * y) - x.mean() * y.mean())
        assert abs(cov) < 0.02

    def test_spec_validation(self):
        with pytest.raises(ContractViolation):
            PlantedSpec(5, 3, (), 0)
        with pytest.raises(ContractViolation):
            PlantedSpec(5, 3, tuple(range(5)), 0)
        with pytest.raises(ContractViolation):
            PlantedSpec(5, 3, (0, 0, 1), 0)
        with pytest.raises(ContractViolation):
            PlantedSpec(5, 3, (0, 5), 0)


def all_two_colorable_graphs(n, k):
    """Ground truth: every 2-colorable k-graph on n labeled vertices."""
    ranks = list(range(comb(n, k)))
    out = []
    for mask in range(2 ** len(ranks)):
        chosen = [r for r in ranks if (mask >> r) & 1]
        g = KGraph.from_ranks(n, k, np.array(chosen, dtype=np.int64))
        if is_two_colorable(g):
            out.append(mask)
    return out


class TestUniformRejection:
    def test_trivial_n_equals_k(self):
        # at n=k the single possible edge is always monochromatic, so only
        # the empty graph is 2-colorable and rejection must land on it
        g = sample_uniform_2colorable_rejection(3, 3, seed=1)
        assert g.n == 3 and g.edge_count == 0

    def test_outputs_two_colorable(self):
        for seed in range(20):
            g = sample_uniform_2colorable_rejection(7, 3, seed=seed)
            assert is_two_colorable(g)

    def test_deterministic(self):
        a = sample_uniform_2colorable_rejection(7, 3, seed=11)
        b = sample_uniform_2colorable_rejection(7, 3, seed=11)
        assert a == b

    def test_cap_rejected(self):
        with pytest.raises(ContractViolation):
            sample_uniform_2colorable_rejection(13, 3, seed=0)

    def test_uniform_at_tiny_scale(self):
        # n=5, k=3: 10 possible edges, 1024 graphs; the accept set is every
        # 2-colorable one, and the sampler must be uniform over exactly it
        accept = all_two_colorable_graphs(5, 3)
        counts = {m: 0 for m in accept}
        trials = 16 * len(accept)
        for seed in range(trials):
            g = sample_uniform_2colorable_rejection(5, 3, seed=seed)
            mask = 0
            for r in g.edge_ranks():
                mask |= 1 << int(r)
            counts[mask] += 1  # KeyError here would mean a non-member output
        from scipy import stats

        observed = np.array(list(counts.values()))
        _, p = stats.chisquare(observed)
        assert p > 0.01, f"uniformity rejected: p={p}"


class TestGadget:
    def test_edge_count_formula(self):
        for k in (3, 4, 5):
            for ell in range(k - 1, 8):
                a = tuple(range(ell))
                b = tuple(range(ell, 2 * ell))
                g = build_kll_gadget(GadgetSpec(k, ell, a, b), 2 * ell)
                assert g.edge_count == 2 * ell * comb(ell, k - 1)

    def test_every_edge_is_one_vs_rest(self):
        g = build_kll_gadget(GadgetSpec(3, 3, (0, 2, 4), (1, 3, 5)), 7)
        A, B = {0, 2, 4}, {1, 3, 5}
        for e in g.edges():
            ina = len(A & set(e))
            assert (ina, 3 - ina) in ((1, 2), (2, 1))

    def test_sides_coloring_proper(self):
        spec = GadgetSpec(3, 3, (0, 1, 2), (3, 4, 5))
        g = build_kll_gadget(spec, 6)
        c = Coloring.from_sides(6, spec.b_vertices)
        assert verify_coloring(g, c).status == "proper"

    def test_validation(self):
        with pytest.raises(ContractViolation):
            GadgetSpec(3, 1, (0,), (1,))  # ell < k-1
        with pytest.raises(ContractViolation):
            GadgetSpec(3, 2, (0, 1), (1, 2))  # overlap
        with pytest.raises(ContractViolation):
            build_kll_gadget(GadgetSpec(3, 2, (0, 1), (2, 5)), 5)


class TestEmbedUnion:
    def test_union_identity_and_idempotence(self):
        base = sample_planted(PlantedSpec(8, 3, tuple(range(4)), 7))
        empty = KGraph.empty(8, 3)
        assert embed_union(base, empty) == base
        assert embed_union(base, base) == base

    def test_union_contains_both(self):
        base = KGraph.from_edges(6, 3, [(0, 1, 2)])
        gadget = KGraph.from_edges(6, 3, [(3, 4, 5)])
        u = embed_union(base, gadget)
        assert sorted(u.edges()) == [(0, 1, 2), (3, 4, 5)]

    def test_mismatched_shapes_rejected(self):
        with pytest.raises(ContractViolation):
            embed_union(KGraph.empty(6, 3), KGraph.empty(7, 3))
