import tempfile
import unittest
from pathlib import Path

from hypothesis import given

from common.errors import GraphParseError
from graph.graph_io import load_graph, parse_graph, save_graph, write_graph
from tests.fixtures import PROPERTY_SETTINGS, path_graph, small_graphs

PATH_TEXT = """# a-b-c
p 3 2
s 0
s 2
e 0 1 3
e 1 2 1
"""


class TestParseGraph(unittest.TestCase):

    def test_reads_path(self):
        self.assertEqual(parse_graph(PATH_TEXT), path_graph())

    def test_accepts_bytes_and_inline_comments(self):
        g = parse_graph(b"p 2 1\ns 0 # first\ns 1\ne 0 1 7\n")
        self.assertEqual(g.weight(0, 1), 7)

    def test_merges_parallel_edges(self):
        g = parse_graph("p 2 2\ns 0\ns 1\ne 0 1 2\ne 1 0 5\n")
        self.assertEqual(g.weight(0, 1), 7)
        self.assertEqual(g.m, 1)

    def test_error_codes_and_lines(self):
        cases = [
            ("s 0\np 2 1\n", "missing_header", 1),
            ("p 2 1\ns 0\ns 1\ne 0 1 -2\n", "negative_capacity", 4),
            (f"p 2 1\ns 0\ns 1\ne 0 1 {2 ** 70}\n", "capacity_overflow", 4),
            (f"p 2 1\ns 0\ns 1\ne 0 1 {2 ** 63}\n", "capacity_overflow", 4),
            (f"p 3 2\ns 0\ns 1\ne 0 1 {2 ** 62}\ne 1 2 {2 ** 62}\n", "capacity_overflow", 0),
            ("p 2 1\ns 0\ns 1\ne 1 1 2\n", "self_loop", 4),
            ("p 2 1\ns 0\ns 5\n", "vertex_out_of_range", 3),
            ("p 2 1\ns 0\ns 0\n", "duplicate_steiner", 3),
            ("p 2 1\ns 0\ns 1\ne 0 1 x\n", "non_integer", 4),
            ("p 2 1\ns 0\ne 0 1 1\n", "too_few_steiner", 0),
            ("p 2 1\ns 0\ns 1\nq 1\n", "malformed", 4),
            ("", "missing_header", 0),
        ]
        for text, code, line in cases:
            with self.subTest(code=code):
                with self.assertRaises(GraphParseError) as ctx:
                    parse_graph(text)
                self.assertEqual(ctx.exception.code, code)
                self.assertEqual(ctx.exception.line, line)

    def test_edge_count_mismatch_only_warns(self):
        with self.assertLogs("graph.graph_io", level="WARNING"):
            g = parse_graph("p 2 3\ns 0\ns 1\ne 0 1 1\n")
        self.assertEqual(g.m, 1)


class TestWriteGraph(unittest.TestCase):

    def test_canonical_text(self):
        self.assertEqual(write_graph(path_graph(), "a-b-c"), PATH_TEXT)

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "path.txt"
            save_graph(path_graph(), path)
            self.assertEqual(load_graph(path), path_graph())

    @PROPERTY_SETTINGS
    @given(small_graphs())
    def test_written_text_parses_back(self, g):
        self.assertEqual(parse_graph(write_graph(g)), g)


if __name__ == '__main__':
    unittest.main()
