"""Graph core: parsing, constructors, density, automorphisms, canonical forms."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kklab import (
    Graph,
    GraphParseError,
    automorphism_count,
    bowtie_graph,
    canonical_key,
    complete_graph,
    cycle_graph,
    density,
    disjoint_union,
    empty_graph,
    max_density,
    max_density_bruteforce,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    path_power_graph,
    petersen_graph,
    spider_graph,
    star_graph,
    theta_graph,
    to_edge_list,
    to_graph6,
)


def random_graph(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, edges)


graphs = st.composite(random_graph)()


class TestParsing:
    def test_edge_list_triangle(self):
        g = parse_edge_list("0 1\n1 2\n2 0")
        assert g.n == 3 and g.edge_count == 3

    def test_edge_list_rejects_loop(self):
        with pytest.raises(GraphParseError):
            parse_edge_list("0 0")

    def test_graph6_round_trip_fixed(self):
        token = "D?{"
        assert to_graph6(parse_graph6(token)) == token

    def test_sniffing_accepts_both_formats(self):
        tri = complete_graph(3)
        assert parse_graph(to_graph6(tri)).edges == tri.edges
        assert parse_graph(to_edge_list(tri)).edges == tri.edges

    def test_edge_list_header_keeps_isolates(self):
        g = parse_edge_list("n=5\n0 1")
        assert g.n == 5 and g.edge_count == 1

    @given(graphs)
    def test_graph6_round_trip(self, g):
        back = parse_graph6(to_graph6(g))
        assert back.n == g.n and back.edges == g.edges

    @given(graphs)
    def test_edge_list_round_trip(self, g):
        back = parse_edge_list(to_edge_list(g))
        assert back.n == g.n and back.edges == g.edges


class TestConstructors:
    def test_petersen_shape(self):
        g = petersen_graph()
        assert g.n == 10 and g.edge_count == 15
        assert all(d == 3 for d in g.degrees())

    def test_theta_orders(self):
        g = theta_graph(1, 2, 2)
        assert g.n == 4 and g.edge_count == 5

    def test_theta_rejects_double_edge(self):
        with pytest.raises(ValueError):
            theta_graph(1, 1, 3)

    def test_spider(self):
        g = spider_graph([1, 2, 2])
        assert g.n == 6 and g.edge_count == 5 and g.max_degree() == 3

    def test_path_power(self):
        g = path_power_graph(5, 2)
        assert g.n == 5 and g.edge_count == 2 * 5 - 3

    def test_disjoint_union(self):
        g = disjoint_union(complete_graph(3), complete_graph(3))
        assert g.n == 6 and g.edge_count == 6

    def test_tree_recognition(self):
        assert path_graph(4).is_tree()
        assert star_graph(5).is_tree()
        assert not cycle_graph(4).is_tree()
        assert not disjoint_union(path_graph(1), path_graph(1)).is_tree()


class TestDensity:
    def test_complete_graph(self):
        assert density(complete_graph(4)) == Fraction(3, 2)

    def test_two_edge_path(self):
        assert density(path_graph(2)) == Fraction(2, 3)

    def test_single_vertex(self):
        assert density(empty_graph(1)) == 0

    def test_max_density_clique(self):
        best = max_density(complete_graph(4))
        assert Fraction(best.numerator, best.denominator) == Fraction(3, 2)
        assert sorted(best.witness) == [0, 1, 2, 3]

    def test_max_density_bowtie(self):
        best = max_density(bowtie_graph())
        assert Fraction(best.numerator, best.denominator) == Fraction(6, 5)

    @pytest.mark.parametrize("k", range(2, 11))
    def test_max_density_trees(self, k):
        best = max_density(path_graph(k - 1))
        assert Fraction(best.numerator, best.denominator) == Fraction(k - 1, k)
        assert len(best.witness) == k

    @given(graphs)
    def test_flow_matches_bruteforce(self, g):
        flow = max_density(g)
        brute = max_density_bruteforce(g)
        assert Fraction(flow.numerator, flow.denominator) == Fraction(
            brute.numerator, brute.denominator
        )


class TestAutomorphisms:
    @pytest.mark.parametrize(
        "g,count",
        [
            (complete_graph(3), 6),
            (cycle_graph(4), 8),
            (path_graph(2), 2),
            (complete_graph(5), 120),
            (petersen_graph(), 120),
            (star_graph(4), 24),
            (bowtie_graph(), 8),
            (empty_graph(4), 24),
        ],
    )
    def test_known_orders(self, g, count):
        assert automorphism_count(g) == count

    @given(graphs, st.randoms(use_true_random=False))
    def test_canonical_key_is_relabeling_invariant(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert canonical_key(g.relabel(perm)) == canonical_key(g)

    @given(graphs, st.randoms(use_true_random=False))
    def test_aut_is_relabeling_invariant(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert automorphism_count(g.relabel(perm)) == automorphism_count(g)
