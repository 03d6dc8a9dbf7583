import json
import unittest

from bench.benchmark import COLUMNS, BenchRow, bench_instance, fit_exponent, run_bench, to_json, to_table
from config.family_manager import FamilyManager


def _row(n: int, words: int) -> BenchRow:
    return BenchRow(n=n, steiner=n, build_ms=0.0, words_stored=words, baseline_words=0,
                    avg_cap_query_ns=0.0, avg_cut_query_ns=0.0, avg_cut_size=0.0)


class TestBenchmark(unittest.TestCase):

    def setUp(self):
        self.family = FamilyManager().parse_inline("n=6,8;steiner=n;density=0.4;weights=1-4;seed=3")

    def test_instance_row(self):
        row = bench_instance(6, self.family, queries=10)
        self.assertEqual(row.n, 6)
        self.assertEqual(row.steiner, 6)
        self.assertGreater(row.words_stored, 0)
        self.assertGreater(row.baseline_words, 0)
        self.assertGreaterEqual(row.avg_cut_size, 1.0)

    def test_without_baseline(self):
        self.assertEqual(bench_instance(6, self.family, queries=3, with_baseline=False).baseline_words, 0)

    def test_table_and_json(self):
        rows = run_bench(self.family, queries=4)
        table = to_table(rows).splitlines()
        self.assertEqual(table[0], " ".join(COLUMNS))
        self.assertEqual(len(table), 3)
        self.assertEqual([r["n"] for r in json.loads(to_json(rows))], [6, 8])

    def test_fit_exponent(self):
        self.assertIsNone(fit_exponent([_row(4, 10)]))
        self.assertAlmostEqual(fit_exponent([_row(n, n * n) for n in (4, 8, 16)]), 2.0, places=6)
        self.assertAlmostEqual(fit_exponent([_row(n, 3 * n) for n in (4, 8, 16)]), 1.0, places=6)


if __name__ == '__main__':
    unittest.main()
