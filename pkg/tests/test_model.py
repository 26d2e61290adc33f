from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from danet.model import (
    DemandGraph,
    Distribution,
    conditional,
    conditional_entropy,
    degree_stats,
    entropy_base_d,
    epl_lower_bound,
    marginal,
    normalize,
)
from helpers import entropy_reference, random_demand_graph

TRIANGLE = {(0, 1): 1, (1, 2): 1, (0, 2): 1}
STAR4 = {(0, i): 1 for i in range(1, 5)}


class TestNormalize:
    def test_scales_weights(self):
        g = normalize({(0, 1): 2, (1, 2): 1})
        assert g.edges[(0, 1)] == pytest.approx(2 / 3)
        assert g.edges[(1, 2)] == pytest.approx(1 / 3)

    def test_identity_on_normalized(self):
        g = normalize({(0, 1): 1})
        assert g.edges == {(0, 1): 1.0}

    def test_empty_demand(self):
        with pytest.raises(ValueError, match="empty demand"):
            normalize({})
        with pytest.raises(ValueError, match="empty demand"):
            normalize({(0, 1): 0.0})

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            normalize({(1, 1): 1.0})

    def test_opposite_orientations_merge(self):
        g = normalize({(1, 0): 1, (0, 1): 3})
        assert g.edges == {(0, 1): 1.0}

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            normalize({(0, 1): 1.0, (0, 2): -0.5})


class TestDemandGraph:
    def test_normalized_sum_checked(self):
        with pytest.raises(ValueError, match="sum"):
            DemandGraph(n=2, edges={(0, 1): 0.5}, normalized=True)

    def test_unnormalized_allowed(self):
        g = DemandGraph(n=2, edges={(0, 1): 31.0}, normalized=False)
        assert g.edges[(0, 1)] == 31.0

    def test_zero_weight_edges_dropped(self):
        g = DemandGraph(n=3, edges={(0, 1): 1.0, (1, 2): 0.0})
        assert g.m == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            DemandGraph(n=2, edges={(0, 2): 1.0})


class TestMarginal:
    def test_uniform_triangle(self):
        g = normalize(TRIANGLE)
        assert marginal(g, 0) == pytest.approx(2 / 3)

    def test_star_center_and_leaf(self):
        g = normalize(STAR4)
        assert marginal(g, 0) == pytest.approx(1.0)
        assert marginal(g, 1) == pytest.approx(1 / 4)

    def test_out_of_range(self):
        g = normalize(STAR4)
        with pytest.raises(ValueError, match="out of range"):
            marginal(g, 5)

    def test_marginals_sum_to_two(self, corpus):
        for g in corpus:
            assert math.fsum(g.marginals) == pytest.approx(2.0, abs=1e-9)


class TestConditional:
    def test_star_center_uniform(self):
        g = normalize(STAR4)
        dist = conditional(g, 0)
        assert dist.symbols == (1, 2, 3, 4)
        assert all(p == pytest.approx(1 / 4) for p in dist.probs)

    def test_single_edge(self):
        g = normalize({(0, 1): 1})
        assert conditional(g, 0).entries == ((1, 1.0),)

    def test_arithmetic(self):
        g = normalize({(0, 1): 0.3, (0, 2): 0.1, (1, 2): 0.6})
        dist = conditional(g, 0)
        assert dict(dist.entries)[1] == pytest.approx(0.75)
        assert dict(dist.entries)[2] == pytest.approx(0.25)

    def test_isolated_node(self):
        g = DemandGraph(n=3, edges={(0, 1): 1.0})
        with pytest.raises(ValueError, match="no demand"):
            conditional(g, 2)


class TestEntropy:
    def test_uniform4_base2(self):
        assert entropy_base_d(Distribution.from_probs([0.25] * 4), 2) == pytest.approx(2.0)

    def test_dyadic(self):
        d = Distribution.from_probs([0.5, 0.25, 0.25])
        assert entropy_base_d(d, 2) == pytest.approx(1.5)

    def test_uniform4_base4(self):
        assert entropy_base_d(Distribution.from_probs([0.25] * 4), 4) == pytest.approx(1.0)

    def test_base_below_two(self):
        with pytest.raises(ValueError):
            entropy_base_d(Distribution.from_probs([1.0]), 1)

    @given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=20), st.integers(2, 6))
    def test_base_conversion(self, raw, d):
        total = sum(raw)
        dist = Distribution.from_probs([w / total for w in raw])
        h2 = entropy_base_d(dist, 2)
        hd = entropy_base_d(dist, d)
        assert hd == pytest.approx(h2 / math.log2(d), abs=1e-9)

    @given(st.lists(st.floats(0.01, 1.0), min_size=3, max_size=12), st.integers(2, 5))
    def test_grouping_rule(self, raw, d):
        # merging the last two symbols loses exactly their binary split term
        total = sum(raw)
        p = [w / total for w in raw]
        merged = p[:-2] + [p[-2] + p[-1]]
        hp = entropy_reference(p, d)
        hq = entropy_reference(merged, d)
        pair = p[-2] + p[-1]
        split = entropy_reference([p[-2] / pair, p[-1] / pair], d)
        assert hp == pytest.approx(hq + pair * split, abs=1e-9)
        assert hq <= hp + 1e-12

    def test_matches_reference(self, corpus):
        for g in corpus[:10]:
            for v in range(0, g.n, max(1, g.n // 5)):
                dist = conditional(g, v)
                assert entropy_base_d(dist, 3) == pytest.approx(
                    entropy_reference(dist.probs, 3), abs=1e-9
                )


class TestConditionalEntropy:
    def test_uniform_triangle(self):
        assert conditional_entropy(normalize(TRIANGLE), 2) == pytest.approx(1.0)

    def test_single_edge_zero(self):
        g = normalize({(0, 1): 1})
        for d in (2, 3, 7):
            assert conditional_entropy(g, d) == 0.0

    def test_star(self):
        assert conditional_entropy(normalize(STAR4), 2) == pytest.approx(1.0)

    def test_skips_isolated(self):
        g = DemandGraph(n=3, edges={(0, 1): 1.0})
        assert conditional_entropy(g, 2) == 0.0


class TestLowerBound:
    def test_single_edge_clamped(self):
        assert epl_lower_bound(normalize({(0, 1): 1}), 3) == 1.0

    def test_star256(self):
        g = normalize({(0, i): 1 for i in range(1, 257)})
        expected = 0.5 * math.log(256, 3) - 1  # direct formula evaluation
        assert epl_lower_bound(g, 2) == pytest.approx(expected, abs=1e-9)
        assert expected == pytest.approx(1.5237, abs=1e-4)

    def test_star4_clamped(self):
        assert epl_lower_bound(normalize(STAR4), 3) == 1.0

    def test_delta_below_two(self):
        with pytest.raises(ValueError):
            epl_lower_bound(normalize(STAR4), 1)


class TestDegreeStats:
    def test_uniform_triangle(self):
        s = degree_stats(normalize(TRIANGLE))
        assert (s.n, s.m) == (3, 3)
        assert (s.min_degree, s.max_degree) == (2, 2)
        assert s.avg_degree == Fraction(2)
        assert s.entropy == pytest.approx(math.log2(3))
        assert s.cond_entropy == pytest.approx(1.0)

    def test_star(self):
        s = degree_stats(normalize(STAR4))
        assert (s.n, s.m, s.min_degree, s.max_degree) == (5, 4, 1, 4)
        assert s.avg_degree == Fraction(8, 5)
        assert s.entropy == pytest.approx(2.0)
        assert s.cond_entropy == pytest.approx(1.0)

    def test_single_edge(self):
        s = degree_stats(normalize({(0, 1): 1}))
        assert (s.n, s.m, s.min_degree, s.max_degree) == (2, 1, 1, 1)
        assert s.avg_degree == Fraction(1)
        assert s.entropy == 0.0
        assert s.cond_entropy == 0.0

    def test_ordering_invariant(self, corpus):
        for g in corpus:
            s = degree_stats(g)
            assert s.min_degree <= s.avg_degree <= s.max_degree
            assert s.avg_degree == Fraction(2 * s.m, s.n)
            assert s.entropy >= 0 and s.cond_entropy >= 0


def test_distribution_rejects_bad_input():
    with pytest.raises(ValueError):
        Distribution(((0, 0.5), (0, 0.5)))
    with pytest.raises(ValueError):
        Distribution(((0, 1.2),))
    with pytest.raises(ValueError):
        Distribution(())


def test_random_graph_generator_sane():
    rng = random.Random(1)
    g = random_demand_graph(rng, 50, 60)
    assert g.n == 50
    assert g.m >= 49
    assert all(g.degree(v) >= 1 for v in range(g.n))
