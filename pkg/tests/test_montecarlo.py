"""Seeded sampling, threshold bisection, and certified instance generators."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kklab import (
    GENERATOR_FAMILIES,
    PreconditionError,
    TrialPlan,
    bernoulli,
    complete_graph,
    cycle_graph,
    derive_rng,
    estimate_pc,
    generate_sparse,
    is_q_sparse,
    make_value,
    path_graph,
    q_min,
    sample_gnp,
    value_cmp,
    wilson_interval,
)


class TestRng:
    def test_same_path_same_stream(self):
        a = derive_rng(7, "x", 1)
        b = derive_rng(7, "x", 1)
        assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]

    def test_paths_are_independent(self):
        a = derive_rng(7, "x", 1)
        b = derive_rng(7, "x", 2)
        assert [a.random() for _ in range(5)] != [b.random() for _ in range(5)]

    def test_seed_matters(self):
        assert derive_rng(1, "t").random() != derive_rng(2, "t").random()


class TestBernoulli:
    def test_degenerate(self):
        rng = derive_rng(0, "b")
        assert not bernoulli(rng, Fraction(0))
        assert bernoulli(rng, Fraction(1))

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_rational_mean(self, seed):
        rng = derive_rng(seed, "mean")
        p = Fraction(1, 3)
        hits = sum(bernoulli(rng, p) for _ in range(300))
        assert 60 <= hits <= 140  # 100 expected, generous slack

    def test_root_probability_is_deterministic(self):
        p = q_min(complete_graph(3), 10).threshold  # irrational
        first = [bernoulli(derive_rng(5, "r", i), p) for i in range(64)]
        second = [bernoulli(derive_rng(5, "r", i), p) for i in range(64)]
        assert first == second
        assert any(first) and not all(first)

    def test_root_probability_frequency(self):
        # p = 120^(-1/3) = 0.2027; 2048 draws, mean 415
        p = make_value(Fraction(1, 120), 3)
        hits = sum(bernoulli(derive_rng(11, "freq", i), p) for i in range(2048))
        assert 330 <= hits <= 500


class TestSampling:
    def test_extreme_probabilities(self):
        rng = derive_rng(3, "g")
        assert sample_gnp(6, Fraction(0), rng).edge_count == 0
        assert sample_gnp(6, Fraction(1), rng).edge_count == 15

    def test_rejects_bad_probability(self):
        with pytest.raises(PreconditionError):
            sample_gnp(4, Fraction(3, 2), derive_rng(0, "g"))

    def test_edge_count_concentration(self):
        total = 0
        for i in range(60):
            total += sample_gnp(30, Fraction(1, 2), derive_rng(i, "conc")).edge_count
        mean = total / 60
        # 217.5 expected, sd ~ 10.4/sqrt(60)
        assert 207 <= mean <= 228


class TestEstimate:
    def test_plan_validation(self):
        with pytest.raises(PreconditionError):
            TrialPlan(n=2, pattern=complete_graph(3))
        with pytest.raises(PreconditionError):
            TrialPlan(n=4, pattern=path_graph(1), trials=0)

    def test_single_edge_tiny_host(self):
        result = estimate_pc(TrialPlan(n=2, pattern=path_graph(1)))
        assert result.p_hat == Fraction(129, 256)
        lo, hi = result.interval
        assert lo <= Fraction(1, 2) <= hi

    def test_single_edge_three_vertices(self):
        result = estimate_pc(TrialPlan(n=3, pattern=path_graph(1)))
        assert result.p_hat == Fraction(53, 256)
        target = make_value(Fraction(1, 8), 3)  # 1 - 2^(-1/3) lives nearby
        lo, hi = result.interval
        assert lo == Fraction(3, 16) and hi == Fraction(7, 32)
        # the closed-form threshold 1 - 2^(-1/3) is inside the interval
        offset = value_cmp(make_value(Fraction(1, 2), 3), 1 - lo)
        assert offset <= 0 and value_cmp(make_value(Fraction(1, 2), 3), 1 - hi) >= 0

    def test_interval_contains_estimate(self):
        for seed in range(6):
            result = estimate_pc(
                TrialPlan(n=3, pattern=path_graph(1), seed=seed, trials=300)
            )
            lo, hi = result.interval
            assert lo <= result.p_hat <= hi

    def test_threads_do_not_change_bytes(self):
        plan = TrialPlan(n=5, pattern=complete_graph(3), trials=200, seed=9)
        one = estimate_pc(plan, threads=1)
        four = estimate_pc(plan, threads=4)
        assert one == four
        assert one.to_json() == four.to_json()
        assert one.trace_csv() == four.trace_csv()

    def test_trace_is_monotone_in_probes(self):
        result = estimate_pc(TrialPlan(n=4, pattern=path_graph(1), trials=400, seed=2))
        probed = sorted(result.probes, key=lambda pr: pr.p)
        rates = [pr.successes / pr.trials for pr in probed]
        # containment probability grows with p, up to CI slack
        for a, b in zip(rates, rates[1:]):
            assert b >= a - 0.15


class TestWilson:
    def test_brackets_the_rate(self):
        lo, hi = wilson_interval(30, 100, 0.95)
        assert lo < 0.3 < hi

    def test_shrinks_with_trials(self):
        lo1, hi1 = wilson_interval(30, 100, 0.95)
        lo2, hi2 = wilson_interval(300, 1000, 0.95)
        assert hi2 - lo2 < hi1 - lo1

    def test_stays_inside_unit_interval(self):
        lo, hi = wilson_interval(0, 50, 0.99)
        assert 0 <= lo and hi < 1
        lo, hi = wilson_interval(50, 50, 0.99)
        assert lo > 0 and hi <= 1


class TestGenerators:
    def test_families_are_published(self):
        assert set(GENERATOR_FAMILIES) == {
            "gnp-repair", "clique-union", "theta", "spider", "path-power",
        }

    @pytest.mark.parametrize(
        "family,params",
        [
            ("gnp-repair", {"vertices": 5}),
            ("clique-union", {"sizes": [3, 4]}),
            ("theta", {"a": 2, "b": 2, "c": 3}),
            ("spider", {"legs": [1, 2, 2]}),
            ("path-power", {"vertices": 6, "power": 2}),
        ],
    )
    def test_output_is_certified(self, family, params):
        q = Fraction(2, 5)
        g = generate_sparse(14, q, family, rng=derive_rng(1, "gen", family), params=params)
        assert is_q_sparse(g, 14, q).sparse

    def test_single_block_clique_union(self):
        g = generate_sparse(10, Fraction(1, 4), "clique-union", params={"sizes": [3]})
        assert g.edge_count == 3

    @pytest.mark.parametrize("family", GENERATOR_FAMILIES)
    def test_q_one_always_accepts(self, family):
        g = generate_sparse(12, Fraction(1), family, rng=derive_rng(2, "gen", family))
        assert g.n >= 1

    def test_theta_rejected_below_its_threshold(self):
        with pytest.raises(PreconditionError) as err:
            generate_sparse(
                12, Fraction(1, 50), "theta", params={"a": 1, "b": 2, "c": 2}
            )
        assert err.value.witness

    def test_gnp_repair_is_deterministic(self):
        q = q_min(complete_graph(3), 10).threshold
        a = generate_sparse(10, q, "gnp-repair", rng=derive_rng(4, "gen"))
        b = generate_sparse(10, q, "gnp-repair", rng=derive_rng(4, "gen"))
        assert a.n == b.n and a.edges == b.edges

    def test_repair_budget_exhaustion(self):
        with pytest.raises(RuntimeError):
            generate_sparse(
                10,
                Fraction(1, 100),
                "gnp-repair",
                rng=derive_rng(0, "gen"),
                params={"vertices": 7, "boost": 40},
                repair_budget=1,
            )

    def test_unknown_family(self):
        with pytest.raises(PreconditionError):
            generate_sparse(10, Fraction(1, 2), "mystery")
