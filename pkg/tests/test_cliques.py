from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import graphs, nx_graph

from diskoct.cliques import (
    TrianglePacking,
    enumerate_k4s,
    enumerate_triangles,
    find_k4,
    maximal_k4_packing,
    maximal_packing_of,
    maximal_triangle_packing,
    maximum_packing_size,
    outside_triangles,
)
from diskoct.graph import Graph


def clique(n, offset=0):
    return [(u + offset, v + offset) for u, v in combinations(range(n), 2)]


K4 = Graph.from_edges(4, clique(4))
K5 = Graph.from_edges(5, clique(5))
C5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
TWO_TRIANGLES = Graph.from_edges(6, clique(3) + clique(3, 3))
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def brute_max_packing(family):
    fam = list(family)
    for k in range(len(fam), 0, -1):
        for combo in combinations(fam, k):
            if len(set().union(*combo)) == 3 * k:
                return k
    return 0


class TestEnumerate:
    def test_counts(self):
        assert len(enumerate_triangles(K4)) == 4
        assert enumerate_triangles(C5) == []
        assert len(enumerate_triangles(K5)) == 10

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=14))
    def test_matches_networkx(self, g):
        tris = enumerate_triangles(g)
        assert tris == sorted(tris)
        expected = {tuple(sorted(c)) for c in nx.enumerate_all_cliques(nx_graph(g)) if len(c) == 3}
        assert set(tris) == expected and len(tris) == len(expected)
        k4s = {tuple(sorted(c)) for c in nx.enumerate_all_cliques(nx_graph(g)) if len(c) == 4}
        assert set(enumerate_k4s(g)) == k4s
        assert (find_k4(g) is None) == (not k4s)


class TestPackings:
    def test_disjointness_enforced(self):
        with pytest.raises(ValueError):
            TrianglePacking(((0, 1, 2), (2, 3, 4)))

    def test_members_sorted_and_covered(self):
        t = TrianglePacking(((2, 1, 0), (5, 4, 3)))
        assert t.members == ((0, 1, 2), (3, 4, 5))
        assert t.covered == frozenset(range(6)) and len(t) == 2

    def test_triangle_free(self):
        assert len(maximal_triangle_packing(C5)) == 0

    def test_disjoint_triangles(self):
        assert maximal_triangle_packing(TWO_TRIANGLES).members == ((0, 1, 2), (3, 4, 5))

    def test_shared_edge(self):
        assert maximal_triangle_packing(DIAMOND).members == ((0, 1, 2),)

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=12), st.one_of(st.none(), st.integers(0, 99)))
    def test_maximal(self, g, order_seed):
        t = maximal_triangle_packing(g, order_seed)
        assert len(t.covered) == 3 * len(t)
        assert all(t.covered.intersection(tri) for tri in enumerate_triangles(g))


class TestK4Packing:
    def test_k4(self):
        assert maximal_k4_packing(K4).members == ((0, 1, 2, 3),)

    def test_k4_free(self):
        assert len(maximal_k4_packing(C5)) == 0

    def test_two_k4_sharing_vertex(self):
        g = Graph.from_edges(7, clique(4) + clique(4, 3))
        assert maximal_k4_packing(g).members == ((0, 1, 2, 3),)


class TestOutside:
    def test_single_triangle(self):
        tri = Graph.from_edges(3, clique(3))
        assert outside_triangles(tri, maximal_triangle_packing(tri)) == []

    def test_shared_edge(self):
        assert outside_triangles(DIAMOND, TrianglePacking(((0, 1, 2),))) == [(1, 2, 3)]

    def test_triangle_free(self):
        assert outside_triangles(C5, TrianglePacking()) == []


class TestMaximalOf:
    def test_empty(self):
        assert len(maximal_packing_of([])) == 0

    def test_disjoint(self):
        assert len(maximal_packing_of([(0, 1, 2), (3, 4, 5)])) == 2

    def test_chain(self):
        got = maximal_packing_of([(4, 5, 6), (2, 3, 4), (0, 1, 2)])
        assert got.members == ((0, 1, 2), (4, 5, 6))


class TestMaximum:
    def test_examples(self):
        assert maximum_packing_size([(0, 1, 2), (3, 4, 5)]) == 2
        assert maximum_packing_size([(0, 1, 2), (1, 2, 3)]) == 1
        assert maximum_packing_size(enumerate_triangles(K5)) == 1
        assert maximum_packing_size([]) == 0

    def test_greedy_is_not_maximum(self):
        # lexicographic greedy takes (0,1,2), which blocks the other three
        fam = [(0, 1, 2), (0, 3, 4), (1, 5, 6), (2, 7, 8)]
        assert len(maximal_packing_of(fam)) == 1
        assert maximum_packing_size(fam) == 3

    def test_budget_exhaustion(self):
        fam = [(0, 1, 2), (0, 3, 4), (1, 5, 6), (2, 7, 8)]
        assert maximum_packing_size(fam, budget=1) is None

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=9))
    def test_matches_brute_force(self, g):
        fam = enumerate_triangles(g)[:14]
        assert maximum_packing_size(fam) == brute_max_packing(fam)
