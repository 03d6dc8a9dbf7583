import unittest

import numpy as np

from common.errors import GeneratorError
from graph.weighted_graph import WeightedGraph
from generators.lower_bounds import (
    gen_bipartite_lb,
    gen_capacity_lb,
    gen_reporting_lb,
    read_bipartite,
    read_matrix,
    recover_bipartite,
    recover_matrix,
    reporting_detects_change,
)
from generators.random_graphs import gen_random, random_bipartite, random_matrix
from oracle.cap_oracle import cap_query
from oracle.cut_oracle import build_full_oracle
from steiner.steiner_base import SteinerCutAnalyzer
from tests.fixtures import path_graph, triangles_and_bridge
from verify.brute_force import brute_cap_after, brute_steiner_mincut


class TestCapacityLowerBound(unittest.TestCase):

    def setUp(self):
        self.matrix = [[1, 2], [3, 4]]
        self.g, self.layout = gen_capacity_lb(self.matrix)

    def test_layout(self):
        self.assertEqual(self.layout.left, (0, 1))
        self.assertEqual(self.layout.right, (2, 3))
        self.assertEqual(self.layout.infinity, 11)
        self.assertEqual(self.layout.n, 4)
        self.assertEqual(self.g.weight(0, 3), 2)
        self.assertEqual(self.g.weight(0, 1), 11)

    def test_left_side_is_the_mincut(self):
        lam, cut = SteinerCutAnalyzer(self.g).steiner_mincut()
        self.assertEqual(lam, 10)
        self.assertEqual(cut.side, frozenset({0, 1}))
        self.assertEqual(brute_cap_after(self.g, 0, 3, 2), 8)

    def test_matrix_is_recovered(self):
        self.assertEqual(recover_matrix(build_full_oracle(self.g), self.layout), self.matrix)

    def test_steiner_split(self):
        g, _ = gen_capacity_lb([[1, 1, 1], [1, 1, 1]], steiner_count=3)
        self.assertEqual(g.sorted_steiner, [0, 2, 3])

    def test_rejects_bad_matrices(self):
        for matrix in ([], [[1, 2], [3]], [[1, 0], [2, 2]], [[1], [1], [1]]):
            with self.subTest(matrix=matrix):
                with self.assertRaises(GeneratorError):
                    gen_capacity_lb(matrix)
        with self.assertRaises(GeneratorError):
            gen_capacity_lb([[1]], steiner_count=3)


class TestBipartiteLowerBound(unittest.TestCase):

    def test_single_cross_edge(self):
        adjacency = [[1, 0], [0, 0]]
        g, layout = gen_bipartite_lb(adjacency)
        o = build_full_oracle(g)
        self.assertTrue(cap_query(o.cap_tree, 0, 2, 1).changed)
        self.assertFalse(cap_query(o.cap_tree, 0, 3, 0).changed)
        self.assertEqual(recover_bipartite(o, layout), adjacency)

    def test_complete_bipartite(self):
        g, layout = gen_bipartite_lb([[1, 1, 1], [1, 1, 1]])
        self.assertEqual(g.n, 5)
        self.assertEqual(layout.infinity, 7)
        self.assertEqual(SteinerCutAnalyzer(g).lambda_s, 6)

    def test_rejects_non_binary(self):
        with self.assertRaises(GeneratorError):
            gen_bipartite_lb([[2, 0], [0, 0]])


class TestReportingLowerBound(unittest.TestCase):

    def test_from_path_scales(self):
        gs, params = gen_reporting_lb(path_graph())
        self.assertEqual((params.scale, params.lam, params.alpha, params.lam_prime), (2, 2, 0, 1))
        self.assertEqual((params.s, params.attach), (3, 0))
        self.assertEqual(gs.weight(0, 3), 1)
        self.assertEqual(gs.weight(0, 1), 6)
        self.assertIn(3, gs.steiner)
        self.assertEqual(SteinerCutAnalyzer(gs).lambda_s, 1)

    def test_detects_only_vital_failures(self):
        gs, params = gen_reporting_lb(triangles_and_bridge())
        self.assertEqual(params.s, 6)
        self.assertEqual(params.scale, 2)
        self.assertEqual(params.c_m, frozenset(range(6)))
        o = build_full_oracle(gs)
        self.assertFalse(reporting_detects_change(o, params, 0, 1))
        self.assertTrue(reporting_detects_change(o, params, 2, 3))

    def test_rejects_infeasible(self):
        with self.assertRaises(GeneratorError):
            gen_reporting_lb(path_graph(), allow_scaling=False)
        with self.assertRaises(GeneratorError):
            gen_reporting_lb(WeightedGraph(2, [(0, 1, 0)], [0, 1]))
        with self.assertRaises(GeneratorError):
            gen_reporting_lb(path_graph(), attach=9)


class TestSeededInstances(unittest.TestCase):
    """Seeded sweeps over each lower-bound family, checked against enumeration."""

    def setUp(self):
        self.rng = np.random.default_rng(2024)

    def test_matrices_are_recovered(self):
        for i in range(20):
            n = int(self.rng.integers(2, 9))
            matrix = random_matrix(n, seed=int(self.rng.integers(0, 2 ** 31)))
            k = None if i % 2 else int(self.rng.integers(2, n + 1))
            with self.subTest(n=n, steiner=k, matrix=matrix):
                g, layout = gen_capacity_lb(matrix, steiner_count=k)
                o = build_full_oracle(g)
                self.assertEqual(recover_matrix(o, layout), matrix)
                answer = brute_steiner_mincut(g)
                self.assertEqual(o.lambda_s, answer.lambda_s)
                for i_row, a in enumerate(layout.left):
                    for j_col, b in enumerate(layout.right):
                        self.assertEqual(brute_cap_after(g, a, b, g.weight(a, b), answer=answer),
                                         answer.lambda_s - matrix[i_row][j_col])

    def test_bipartite_graphs_are_recovered(self):
        for _ in range(20):
            n = int(self.rng.integers(2, 9))
            density = float(self.rng.uniform(0.2, 0.8))
            adjacency = random_bipartite(n, density, seed=int(self.rng.integers(0, 2 ** 31)))
            with self.subTest(n=n, adjacency=adjacency):
                g, layout = gen_bipartite_lb(adjacency)
                self.assertEqual(recover_bipartite(build_full_oracle(g), layout), adjacency)

    def test_reporting_instances(self):
        for _ in range(12):
            n = int(self.rng.integers(3, 8))
            k = int(self.rng.integers(2, n + 1))
            h = gen_random(n, 0.5, (1, 5), 1.0, int(self.rng.integers(0, 2 ** 31)), steiner_count=k)
            with self.subTest(h=repr(h)):
                gs, params = gen_reporting_lb(h)
                self.assertTrue(params.alpha < params.lam_prime < params.lam)

                # C_m is the only Steiner mincut of G_s(H)
                answer = brute_steiner_mincut(gs)
                self.assertEqual(answer.lambda_s, params.lam_prime)
                self.assertEqual(answer.mincuts, [params.c_m])

                in_h = SteinerCutAnalyzer(params.base)
                o = build_full_oracle(gs)
                for u, v, _ in params.base.edges:
                    vital = answer.vital[(u, v)]
                    self.assertEqual(in_h.is_vital(u, v), vital)
                    self.assertEqual(reporting_detects_change(o, params, u, v), vital)


class TestReaders(unittest.TestCase):

    def test_read_matrix(self):
        self.assertEqual(read_matrix("# M\n1 2\n3 4\n\n"), [[1, 2], [3, 4]])
        self.assertEqual(read_bipartite("1 0\n0 1\n"), [[1, 0], [0, 1]])
        with self.assertRaises(GeneratorError):
            read_matrix("1 x\n")
        with self.assertRaises(GeneratorError):
            read_matrix("1 2\n3\n")


if __name__ == '__main__':
    unittest.main()
