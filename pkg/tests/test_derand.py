from itertools import combinations

import pytest
from families import k4_free_graphs

from diskoct.cliques import TrianglePacking, maximal_triangle_packing
from diskoct.derand import (
    K4Error,
    construct_derandomized_R,
    dead_vertices,
    derand_violations,
)
from diskoct.graph import Graph

TRIANGLE = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def only_size_floor(msgs):
    return [m for m in msgs if "400^3" not in m]


class TestConstruction:
    def test_single_triangle(self):
        t = maximal_triangle_packing(TRIANGLE)
        st = construct_derandomized_R(TRIANGLE, t)
        assert st.I == (0,)
        assert st.I_blocks == ((), (), ())
        assert st.R == (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2}))
        assert st.R_prime(1) == frozenset({1, 2})

    def test_two_disjoint_triangles(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        st = construct_derandomized_R(g, maximal_triangle_packing(g))
        for r in st.R:
            assert len(r) == 4
            assert len(r & {0, 1, 2}) == 2 and len(r & {3, 4, 5}) == 2

    def test_every_triangle_heavy(self):
        # x_k is adjacent to z_j for every j != k, so both have 2 + 100 neighbours in V(T); still K4-free
        K = 101
        edges = []
        for k in range(K):
            x, y, z = 3 * k, 3 * k + 1, 3 * k + 2
            edges += [(x, y), (y, z), (x, z)]
            edges += [(x, 3 * j + 2) for j in range(K) if j != k]
        g = Graph.from_edges(3 * K, edges)
        t = maximal_triangle_packing(g)
        assert len(t) == K
        st = construct_derandomized_R(g, t)
        assert st.H_prime == frozenset(v for v in range(3 * K) if v % 3 != 1)
        assert st.L == frozenset() and st.I == ()
        assert st.R[0] == st.R[1] == st.R[2] == st.H == t.covered

    def test_rejects_k4(self):
        k4 = Graph.from_edges(4, list(combinations(range(4), 2)))
        with pytest.raises(K4Error):
            construct_derandomized_R(k4, TrianglePacking(((0, 1, 2),)))

    def test_rule_c_keeps_lower_nonadjacent(self):
        # I = [0, 6, 9]; block vertex 0 touches triangle (3, 4, 5) only at 4
        edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 4)]
        edges += [(6, 7), (7, 8), (6, 8), (9, 10), (10, 11), (9, 11)]
        g = Graph.from_edges(12, edges)
        t = maximal_triangle_packing(g)
        st = construct_derandomized_R(g, t)
        assert st.I == (0, 6, 9) and st.I_blocks == ((0,), (6,), (9,))
        b = {3, 4, 5}
        assert [set(r & b) for r in st.R] == [{3, 4}, {4, 5}, {3, 5}]
        assert derand_violations(g, t, st) == []


class TestDead:
    def test_single_triangle(self):
        t = maximal_triangle_packing(TRIANGLE)
        assert dead_vertices(TRIANGLE, t, {0, 1}) == {2}

    def test_outside_triangle_ignored(self):
        assert dead_vertices(DIAMOND, TrianglePacking(((0, 1, 2),)), {0, 1}) == {2}

    def test_everything_in_R(self):
        t = maximal_triangle_packing(TRIANGLE)
        assert dead_vertices(TRIANGLE, t, {0, 1, 2}) == set()


def test_structural_properties_on_generated_instances():
    # every check except the |T|/400^3 floor, which small instances cannot meet
    for _, k, _ in k4_free_graphs(60, seed=12):
        t = maximal_triangle_packing(k)
        st = construct_derandomized_R(k, t)
        assert only_size_floor(derand_violations(k, t, st)) == []
        for blk, r in zip(st.I_blocks, st.R):
            assert set(blk) <= dead_vertices(k, t, r)
