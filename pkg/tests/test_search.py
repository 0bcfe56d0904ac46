"""Extremal machinery: exact sweep oracle and the annealing search."""

from fractions import Fraction

import pytest

from kklab import (
    PreconditionError,
    certified_sparse,
    complete_graph,
    cycle_graph,
    exhaustive_sweep,
    extremal_search,
    graphs_on,
    is_q_sparse,
    path_graph,
    q_min,
    score_pair_cmp,
    to_graph6,
)


class TestScoreOrder:
    def test_equal_expectations_compare_copies(self):
        e = Fraction(3, 2)
        assert score_pair_cmp((5, e), (4, e), 3) > 0
        assert score_pair_cmp((4, e), (4, e), 3) == 0

    def test_cross_expectation_comparison(self):
        # 2^3/1 vs 3^3/4: 8 > 27/4
        assert score_pair_cmp((2, Fraction(1)), (3, Fraction(4)), 3) > 0
        assert score_pair_cmp((2, Fraction(1)), (3, Fraction(3)), 3) < 0

    def test_zero_copies_sort_low(self):
        assert score_pair_cmp((0, Fraction(1)), (1, Fraction(5)), 2) < 0


class TestCertifiedSparse:
    @pytest.mark.parametrize("q", [Fraction(1, 5), Fraction(2, 5), Fraction(1)])
    def test_matches_reference_check(self, q):
        n = 10
        for g in graphs_on(4):
            assert certified_sparse(g, n, q) == is_q_sparse(g, n, q).sparse


class TestSweep:
    def test_triangle_on_three_vertices(self):
        result = exhaustive_sweep(10, Fraction(1), complete_graph(3), v_cap=3)
        assert to_graph6(result.graph) == "Bw"
        assert result.copies == 1

    def test_infeasible_q(self):
        with pytest.raises(PreconditionError):
            exhaustive_sweep(10, Fraction(1, 1000), complete_graph(3), v_cap=4)

    def test_vertex_cap_guard(self):
        with pytest.raises(PreconditionError):
            exhaustive_sweep(10, Fraction(1), complete_graph(3), v_cap=9)

    def test_triangle_probe_regression(self):
        q = q_min(complete_graph(3), 10).threshold
        result = exhaustive_sweep(10, q, complete_graph(3), v_cap=6)
        assert to_graph6(result.graph) == "Bw"
        assert result.copies == 1
        assert result.enclosure == ("1.000000000000", "1.000000000000")
        assert result.candidates == 208
        assert result.sparse_candidates == 82

    def test_threads_do_not_change_result(self):
        q = Fraction(1, 2)
        one = exhaustive_sweep(8, q, path_graph(2), v_cap=5, threads=1)
        four = exhaustive_sweep(8, q, path_graph(2), v_cap=5, threads=4)
        assert one.to_json() == four.to_json()


class TestAnnealer:
    def test_zero_budget_leaderboard(self):
        result = extremal_search(10, Fraction(1), complete_graph(3), budget=0, seed=0)
        assert len(result.entries) == 1
        entry = result.entries[0]
        assert entry.copies == 0 and to_graph6(entry.graph) == "@"

    def test_triangle_found_at_q_one(self):
        result = extremal_search(
            8, Fraction(1), complete_graph(3), budget=300, seed=1, host_cap=6
        )
        assert result.entries[0].copies >= 1

    def test_matches_sweep_oracle(self):
        q = q_min(complete_graph(3), 10).threshold
        sweep = exhaustive_sweep(10, q, complete_graph(3), v_cap=6)
        search = extremal_search(
            10, q, complete_graph(3), budget=2000, seed=7, host_cap=6
        )
        best = search.entries[0]
        assert to_graph6(best.graph) == to_graph6(sweep.graph)
        assert best.enclosure == sweep.enclosure

    def test_reproducible_across_threads_and_reruns(self):
        q = Fraction(1, 2)
        runs = [
            extremal_search(
                8, q, cycle_graph(4), budget=500, seed=3, host_cap=6,
                chains=3, threads=t,
            ).to_json()
            for t in (1, 4, 2)
        ]
        assert runs[0] == runs[1] == runs[2]

    def test_chain_metadata(self):
        result = extremal_search(
            8, Fraction(1), complete_graph(3), budget=200, seed=5, host_cap=5, chains=2
        )
        meta = result.metadata
        assert meta["chains"] == 2 and len(meta["chain_stats"]) == 2
        for stat in meta["chain_stats"]:
            assert stat["budget"] in (100, 101, 99, 100)
            assert stat["accepted"] <= stat["budget"]

    def test_pattern_must_fit_host_cap(self):
        with pytest.raises(PreconditionError):
            extremal_search(10, Fraction(1), complete_graph(5), budget=10, seed=0, host_cap=4)

    def test_infeasible_q(self):
        with pytest.raises(PreconditionError):
            extremal_search(10, Fraction(1, 1000), complete_graph(3), budget=10, seed=0)
