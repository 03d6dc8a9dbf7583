import unittest

from hypothesis import given

from common.errors import EdgeTypeError, NotVitalError, SteinerSentryError
from graph.weighted_graph import EdgeKind, classify_edge, contributes, cut_capacity, is_steiner_cut
from oracle.gomory_hu import build_gh_tree
from steiner.steiner_base import SteinerCutAnalyzer, nearest_mincut, steiner_mincut, vital_edges
from tests.fixtures import PROPERTY_SETTINGS, k3, nonvital_type3, path_graph, small_graphs, triangles_and_bridge
from verify.brute_force import brute_steiner_mincut


class TestSteinerMincut(unittest.TestCase):

    def test_path(self):
        lam, cut = steiner_mincut(path_graph())
        self.assertEqual(lam, 1)
        self.assertEqual(cut.side, frozenset({0, 1}))

    def test_triangles_and_bridge(self):
        lam, cut = steiner_mincut(triangles_and_bridge())
        self.assertEqual(lam, 1)
        self.assertEqual(cut.side, frozenset({0, 1, 2}))

    @PROPERTY_SETTINGS
    @given(small_graphs())
    def test_agrees_with_enumeration(self, g):
        self.assertEqual(steiner_mincut(g)[0], brute_steiner_mincut(g).lambda_s)


class TestMincutForEdge(unittest.TestCase):

    def test_path_edges(self):
        analyzer = SteinerCutAnalyzer(path_graph())
        first = analyzer.mincut_for_edge(0, 1)
        self.assertEqual(first.capacity, 3)
        self.assertEqual(first.cut.side, frozenset({0}))
        self.assertTrue(first.vital)
        self.assertEqual(first.margin, 0)

        second = analyzer.mincut_for_edge(1, 2)
        self.assertEqual(second.capacity, 1)
        self.assertEqual(second.cut.side, frozenset({0, 1}))
        self.assertTrue(second.vital)

    def test_orientation_follows_first_endpoint(self):
        em = SteinerCutAnalyzer(path_graph()).mincut_for_edge(1, 0)
        self.assertIn(1, em.cut.side)
        self.assertNotIn(0, em.cut.side)

    def test_triangle_edge_not_vital(self):
        analyzer = SteinerCutAnalyzer(triangles_and_bridge())
        self.assertFalse(analyzer.is_vital(0, 1))
        self.assertTrue(analyzer.is_vital(2, 3))
        self.assertEqual([em.edge[:2] for em in analyzer.vital_edges()], [(2, 3)])

    @PROPERTY_SETTINGS
    @given(small_graphs())
    def test_every_edge_mincut_is_tight(self, g):
        analyzer = SteinerCutAnalyzer(g)
        answer = brute_steiner_mincut(g)
        for (u, v), em in analyzer.all_edge_mincuts().items():
            self.assertTrue(is_steiner_cut(g, em.cut.side))
            self.assertTrue(contributes(em.cut.side, u, v))
            self.assertIn(u, em.cut.side)
            self.assertEqual(em.capacity, answer.edge_capacity[(u, v)])
            self.assertEqual(em.vital, em.capacity - em.edge[2] < answer.lambda_s)

    def test_caches_flows(self):
        analyzer = SteinerCutAnalyzer(k3())
        analyzer.all_edge_mincuts()
        flows = analyzer.engine.flow_count
        analyzer.all_edge_mincuts()
        self.assertEqual(analyzer.engine.flow_count, flows)


class TestNearestMincut(unittest.TestCase):

    def test_k3_type3_edges(self):
        g = k3(steiner=(0, 1))
        self.assertEqual(nearest_mincut(g, 0, 2).cut.side, frozenset({0}))
        self.assertEqual(nearest_mincut(g, 2, 1).cut.side, frozenset({1}))
        self.assertEqual(nearest_mincut(g, 2, 1).edge, (1, 2))

    def test_path_type3_edge(self):
        near = nearest_mincut(path_graph(), 2, 1)
        self.assertEqual(near.cut.side, frozenset({2}))
        self.assertEqual(near.cut.capacity, 1)

    def test_rejects_wrong_type(self):
        with self.assertRaises(EdgeTypeError):
            nearest_mincut(k3(), 0, 1)

    def test_rejects_non_vital(self):
        g = nonvital_type3()
        self.assertIs(classify_edge(g, 0, 2).kind, EdgeKind.TYPE3)
        with self.assertRaises(NotVitalError):
            nearest_mincut(g, 0, 2)

    @PROPERTY_SETTINGS
    @given(small_graphs())
    def test_nearest_is_contained_in_every_mincut_for_the_edge(self, g):
        from verify.brute_force import all_mincuts_for_edge

        analyzer = SteinerCutAnalyzer(g)
        answer = brute_steiner_mincut(g)
        for u, v, _ in g.edges:
            etype = classify_edge(g, u, v)
            if etype.kind is not EdgeKind.TYPE3:
                continue
            x, y = etype.steiner_end, etype.nonsteiner_end
            if not analyzer.is_vital(x, y):
                continue
            near = analyzer.nearest_mincut(x, y).cut.side
            for side in all_mincuts_for_edge(answer, x, y):
                self.assertTrue(near <= side)


class TestGomoryHuAssist(unittest.TestCase):

    def test_type2_edges_need_no_extra_flows(self):
        g = triangles_and_bridge()
        analyzer = SteinerCutAnalyzer(g)
        analyzer.attach_gh_tree(build_gh_tree(g))
        mincuts = analyzer.all_edge_mincuts()
        # Only the |S| - 1 flows behind λ_S
        self.assertEqual(analyzer.engine.flow_count, 5)
        self.assertEqual(mincuts[(2, 3)].capacity, 1)
        self.assertEqual(mincuts[(0, 1)].capacity, 2)

    def test_rejects_tree_of_another_graph(self):
        analyzer = SteinerCutAnalyzer(path_graph())
        with self.assertRaises(SteinerSentryError) as ctx:
            analyzer.attach_gh_tree(build_gh_tree(k3()))
        self.assertEqual(ctx.exception.code, "graph_mismatch")

    @PROPERTY_SETTINGS
    @given(small_graphs())
    def test_attached_tree_keeps_every_answer(self, g):
        plain = SteinerCutAnalyzer(g)
        assisted = SteinerCutAnalyzer(g)
        assisted.attach_gh_tree(build_gh_tree(g))
        for (u, v), em in plain.all_edge_mincuts().items():
            other = assisted.mincut_for_edge(u, v)
            self.assertEqual((other.capacity, other.vital), (em.capacity, em.vital))
            if classify_edge(g, u, v).kind is EdgeKind.TYPE2:
                self.assertTrue(is_steiner_cut(g, other.cut.side))
                self.assertTrue(contributes(other.cut.side, u, v))
                self.assertIn(u, other.cut.side)
                self.assertEqual(cut_capacity(g, other.cut.side), other.capacity)
            else:
                self.assertEqual(other.cut, em.cut)
            etype = classify_edge(g, u, v)
            if etype.kind is EdgeKind.TYPE3 and em.vital:
                x, y = etype.steiner_end, etype.nonsteiner_end
                self.assertEqual(assisted.nearest_mincut(x, y), plain.nearest_mincut(x, y))
        self.assertLessEqual(assisted.engine.flow_count, plain.engine.flow_count)


class TestVitalEdges(unittest.TestCase):

    def test_helper(self):
        self.assertEqual(len(vital_edges(path_graph())), 2)


if __name__ == '__main__':
    unittest.main()
