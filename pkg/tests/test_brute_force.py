import unittest

from common.errors import BruteForceLimitError, DeltaOutOfRangeError
from graph.weighted_graph import WeightedGraph
from tests.fixtures import k3, path_graph, triangles_and_bridge
from verify.brute_force import all_mincuts_for_edge, brute_cap_after, brute_mincuts_after, brute_steiner_mincut


class TestBruteForce(unittest.TestCase):

    def test_path(self):
        answer = brute_steiner_mincut(path_graph())
        self.assertEqual(answer.lambda_s, 1)
        self.assertEqual(answer.mincuts, [frozenset({0, 1})])
        self.assertEqual(answer.edge_capacity, {(0, 1): 3, (1, 2): 1})
        self.assertEqual(answer.vital, {(0, 1): True, (1, 2): True})

    def test_only_steiner_cuts_are_enumerated(self):
        answer = brute_steiner_mincut(path_graph())
        # {0,2} holds every Steiner vertex, so only {0} and {0,1} remain
        self.assertEqual(sorted(map(sorted, (answer.side_of(int(m)) for m in answer.masks))), [[0], [0, 1]])

    def test_k3_mincuts(self):
        answer = brute_steiner_mincut(k3())
        self.assertEqual(answer.lambda_s, 2)
        self.assertEqual(sorted(map(sorted, answer.mincuts)), [[0], [0, 1], [0, 2]])

    def test_cap_after(self):
        g = triangles_and_bridge()
        self.assertEqual(brute_cap_after(g, 2, 3, 1), 0)
        self.assertEqual(brute_cap_after(g, 0, 1, 1), 1)
        with self.assertRaises(DeltaOutOfRangeError):
            brute_cap_after(g, 0, 1, 2)

    def test_mincuts_after(self):
        answer = brute_steiner_mincut(path_graph())
        lam, sides = brute_mincuts_after(answer, 0, 1, 3)
        self.assertEqual(lam, 0)
        self.assertEqual(sides, [frozenset({0})])

    def test_mincuts_for_edge_are_oriented(self):
        answer = brute_steiner_mincut(k3())
        cuts = all_mincuts_for_edge(answer, 1, 0)
        self.assertEqual(sorted(map(sorted, cuts)), [[1], [1, 2]])

    def test_limit(self):
        g = WeightedGraph(6, [(0, 1, 1)], [0, 1])
        with self.assertRaises(BruteForceLimitError):
            brute_steiner_mincut(g, limit=5)


if __name__ == '__main__':
    unittest.main()
