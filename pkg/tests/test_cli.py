import io
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from graph.graph_io import parse_graph, save_graph
from main import main
from tests.fixtures import path_graph, triangles_and_bridge


def run_cli(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCli(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.graph = self.tmp / "path.txt"
        save_graph(path_graph(), self.graph)
        self.oracle = self.tmp / "path.oracle"

    def tearDown(self):
        self._tmp.cleanup()

    def _build(self):
        code, out, _ = run_cli("build", "-g", str(self.graph), "-o", str(self.oracle))
        self.assertEqual(code, 0)
        return out

    def test_build(self):
        out = self._build()
        self.assertEqual(out.splitlines(), [
            "lambda_s=1",
            "words_type1=0 words_gh=4 words_type3=5 words_captree=12 words_total=21",
        ])
        self.assertTrue(self.oracle.is_file())

    def test_cap_and_cut(self):
        self._build()
        code, out, _ = run_cli("cap", "-o", str(self.oracle), "-u", "0", "-v", "1", "-d", "3")
        self.assertEqual((code, out), (0, "0 changed\n"))
        code, out, _ = run_cli("cap", "-o", str(self.oracle), "-u", "1", "-v", "2", "-d", "0")
        self.assertEqual(out, "1 unchanged\n")
        code, out, _ = run_cli("cut", "-o", str(self.oracle), "-u", "0", "-v", "1", "-d", "3")
        self.assertEqual((code, out), (0, "0 changed\n0 cap=0\n"))
        code, out, _ = run_cli("cut", "-o", str(self.oracle), "-u", "1", "-v", "2", "-d", "1")
        self.assertEqual(out, "0 changed\n2 cap=0\n")

    def test_exit_codes(self):
        self._build()
        code, _, err = run_cli("cap", "-o", str(self.oracle), "-u", "0", "-v", "2", "-d", "0")
        self.assertEqual(code, 3)
        self.assertIn("unknown_edge", err)
        code, _, err = run_cli("cut", "-o", str(self.oracle), "-u", "0", "-v", "1", "-d", "4")
        self.assertEqual(code, 4)
        self.assertIn("delta_out_of_range", err)
        code, _, _ = run_cli("build", "-g", str(self.tmp / "missing.txt"), "-o", str(self.oracle))
        self.assertEqual(code, 2)
        code, _, _ = run_cli("gen", "gsh", "-g", str(self.graph), "--no-scaling")
        self.assertEqual(code, 5)
        code, _, _ = run_cli("bench", "--family", "no_such_family")
        self.assertEqual(code, 5)

    def test_corrupt_oracle_body(self):
        self._build()
        text = self.oracle.read_text()
        self.assertIn('"parent":[-1,0,1]', text)
        self.oracle.write_text(text.replace('"parent":[-1,0,1]', '"parent":[-1,0,7]'))
        code, out, err = run_cli("cap", "-o", str(self.oracle), "-u", "0", "-v", "1", "-d", "0")
        self.assertEqual((code, out), (2, ""))
        self.assertIn("oracle_format", err)

    def test_malformed_graph(self):
        bad = self.tmp / "bad.txt"
        bad.write_text("p 2 1\ns 0\ns 1\ne 0 1 -1\n")
        code, _, err = run_cli("build", "-g", str(bad), "-o", str(self.oracle))
        self.assertEqual(code, 2)
        self.assertIn("negative_capacity", err)

    def test_verify_single_graph(self):
        report_path = self.tmp / "report.json"
        code, out, _ = run_cli("verify", "-g", str(self.graph), "--seed", "3", "--report-json", str(report_path))
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("graphs 1\n"))
        self.assertIn("PASS cut_query", out)
        self.assertIn('"passed": true', report_path.read_text())

    def test_verify_corpus(self):
        code, out, _ = run_cli("verify", "--count", "2", "--min-n", "4", "--max-n", "5", "--seed", "4")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("graphs 2\n"))

    def test_gen_commands(self):
        code, out, _ = run_cli("gen", "matrix", "--n", "4", "--seed", "1")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("# G(M) rows=[0, 1] cols=[2, 3]"))
        self.assertEqual(parse_graph(out).n, 4)

        code, out, _ = run_cli("gen", "random", "--n", "7", "--seed", "2", "--steiner", "3")
        self.assertEqual(len(parse_graph(out).steiner), 3)

        h = self.tmp / "h.txt"
        save_graph(triangles_and_bridge(), h)
        target = self.tmp / "gs.txt"
        code, _, _ = run_cli("gen", "gsh", "-g", str(h), "-o", str(target))
        self.assertEqual(code, 0)
        self.assertEqual(parse_graph(target.read_text()).n, 7)

        code, _, err = run_cli("gen", "bipartite")
        self.assertEqual(code, 2)
        self.assertIn("missing_argument", err)

    def test_bench_inline_family(self):
        code, out, _ = run_cli("bench", "--family", "n=5,6;steiner=half;density=0.5;weights=1-3;seed=2",
                               "--queries", "5")
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertTrue(lines[0].startswith("n steiner build_ms"))
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[-1].startswith("# words ~ n^"))


if __name__ == '__main__':
    unittest.main()
