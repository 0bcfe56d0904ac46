"""Subgraph counting: generic backtracking, specialized counters, packing."""

import math

import pytest
from hypothesis import given, strategies as st

from kklab import (
    Graph,
    ResourceGuardError,
    automorphism_count,
    bowtie_graph,
    complete_graph,
    count_cliques,
    count_copies,
    count_cycles,
    count_labeled,
    count_xy_paths,
    cycle_graph,
    empty_graph,
    graphs_on,
    max_xy_paths,
    packing_number,
    path_graph,
    petersen_graph,
    star_graph,
    trees_up_to,
)


def random_host(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(n, edges)


hosts = st.composite(random_host)()

PATTERNS = [
    complete_graph(3),
    complete_graph(4),
    cycle_graph(4),
    cycle_graph(5),
    path_graph(1),
    path_graph(2),
    path_graph(3),
    star_graph(3),
]


class TestCopies:
    @pytest.mark.parametrize(
        "host,pattern,want",
        [
            (complete_graph(5), complete_graph(3), 10),
            (cycle_graph(5), complete_graph(3), 0),
            (complete_graph(4), cycle_graph(4), 3),
            (petersen_graph(), cycle_graph(5), 12),
        ],
    )
    def test_known_counts(self, host, pattern, want):
        assert count_copies(host, pattern) == want

    def test_pattern_with_isolates_scales_with_host_order(self):
        # a pattern isolate may land on any unused host vertex
        pattern = Graph(3, [(0, 1)])
        assert count_copies(complete_graph(4), pattern) == 6 * 2

    @given(hosts)
    def test_threads_do_not_change_counts(self, host):
        pattern = path_graph(2)
        assert count_copies(host, pattern, threads=4) == count_copies(host, pattern)


class TestLabeled:
    @pytest.mark.parametrize(
        "host,pattern,want",
        [
            (complete_graph(3), path_graph(2), 6),
            (path_graph(2), path_graph(1), 4),
            (star_graph(3), path_graph(2), 6),
        ],
    )
    def test_known_counts(self, host, pattern, want):
        assert count_labeled(host, pattern) == want

    @given(hosts, st.sampled_from(PATTERNS))
    def test_labeled_is_copies_times_aut(self, host, pattern):
        assert count_labeled(host, pattern) == count_copies(host, pattern) * automorphism_count(pattern)


class TestCliques:
    @pytest.mark.parametrize(
        "host,r,want",
        [
            (complete_graph(6), 4, 15),
            (petersen_graph(), 3, 0),
            (bowtie_graph(), 3, 2),
        ],
    )
    def test_known_counts(self, host, r, want):
        assert count_cliques(host, r) == want

    @given(hosts, st.integers(min_value=1, max_value=5))
    def test_matches_generic_counter(self, host, r):
        assert count_cliques(host, r) == count_copies(host, complete_graph(r))


class TestCycles:
    @pytest.mark.parametrize(
        "host,k,want",
        [
            (complete_graph(4), 4, 3),
            (cycle_graph(7), 7, 1),
            (cycle_graph(7), 5, 0),
        ],
    )
    def test_known_counts(self, host, k, want):
        assert count_cycles(host, k) == want

    @pytest.mark.parametrize("n", range(3, 10))
    def test_complete_host_closed_form(self, n):
        for k in range(3, n + 1):
            assert count_cycles(complete_graph(n), k) == math.perm(n, k) // (2 * k)

    @given(hosts, st.integers(min_value=3, max_value=6))
    def test_matches_generic_counter(self, host, k):
        assert count_cycles(host, k) == count_copies(host, cycle_graph(k))


class TestPaths:
    def test_antipodal_pair_on_a_hexagon(self):
        assert count_xy_paths(cycle_graph(6), 0, 3, 3) == 2

    def test_single_edge(self):
        assert count_xy_paths(complete_graph(3), 0, 1, 1) == 1

    def test_common_neighbors_in_k4(self):
        assert count_xy_paths(complete_graph(4), 0, 1, 2) == 2

    def test_endpoint_maximum(self):
        assert max_xy_paths(cycle_graph(6), 3)[0] == 2
        assert max_xy_paths(complete_graph(4), 2)[0] == 2
        assert max_xy_paths(empty_graph(5), 2)[0] == 0

    @given(hosts, st.integers(min_value=1, max_value=4))
    def test_pair_sums_count_unrooted_paths(self, host, edges):
        total = sum(
            count_xy_paths(host, x, y, edges)
            for x in range(host.n)
            for y in range(x + 1, host.n)
        )
        assert total == count_copies(host, path_graph(edges))


class TestPacking:
    @pytest.mark.parametrize(
        "host,pattern,want",
        [
            (complete_graph(4), complete_graph(3), 1),
            (complete_graph(7), complete_graph(3), 7),
            (cycle_graph(6), path_graph(2), 3),
        ],
    )
    def test_known_numbers(self, host, pattern, want):
        assert packing_number(host, pattern, mode="exact") == want

    @given(hosts, st.sampled_from(PATTERNS[:5]))
    def test_exact_at_least_greedy(self, host, pattern):
        exact = packing_number(host, pattern, mode="exact")
        greedy = packing_number(host, pattern, mode="greedy")
        assert exact >= greedy

    def test_rejects_empty_pattern(self):
        with pytest.raises(ValueError):
            packing_number(complete_graph(3), empty_graph(2))


class TestResourceGuards:
    def test_node_budget(self):
        with pytest.raises(ResourceGuardError):
            count_copies(complete_graph(7), path_graph(3), node_budget=5)

    def test_copy_cap(self):
        with pytest.raises(ResourceGuardError):
            packing_number(complete_graph(7), path_graph(2), copy_cap=10)


class TestCatalog:
    def test_catalog_sizes(self):
        # non-isomorphic graph counts on 1..7 labeled-free vertices
        assert [len(graphs_on(v)) for v in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]

    def test_tree_counts(self):
        # 1, 1, 1, 2, 3 non-isomorphic trees on 1..5 vertices
        trees = trees_up_to(5)
        assert len(trees) == 8
        assert all(t.is_tree() for t in trees)
