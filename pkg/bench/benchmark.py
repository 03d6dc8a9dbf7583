"""
Space and query-time sweep over a graph family.

Stored size is counted in words (vertex-id slots and node records) rather than
process memory; query latencies are averaged over seeded random (edge, delta) pairs.
"""
import json
import logging
import time
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from config.family_manager import FamilySpec
from generators.random_graphs import gen_family_instance
from oracle.cap_oracle import cap_query
from oracle.cut_oracle import baseline_space, build_baseline_oracle, build_full_oracle, cut_query, space_report
from steiner.steiner_base import SteinerCutAnalyzer

logger = logging.getLogger(__name__)

COLUMNS = ("n", "steiner", "build_ms", "words_stored", "baseline_words",
           "avg_cap_query_ns", "avg_cut_query_ns", "avg_cut_size")


@dataclass(frozen=True)
class BenchRow:
    n: int
    steiner: int
    build_ms: float
    words_stored: int
    baseline_words: int
    avg_cap_query_ns: float
    avg_cut_query_ns: float
    avg_cut_size: float


def bench_instance(n: int, family: FamilySpec, queries: int, with_baseline: bool = True) -> BenchRow:
    g = gen_family_instance(n, family.steiner_rule, family.density, family.weights, family.seed + n)
    analyzer = SteinerCutAnalyzer(g)

    start = time.perf_counter()
    oracle = build_full_oracle(g, analyzer)
    build_ms = (time.perf_counter() - start) * 1000.0

    words = space_report(oracle).total
    baseline_words = baseline_space(build_baseline_oracle(g, analyzer)) if with_baseline else 0

    # Seeded query workload
    rng = np.random.default_rng(family.seed + 7 * n)
    edges = g.edges
    picks = rng.integers(0, len(edges), size=queries)
    workload = []
    for i in picks:
        u, v, w = edges[int(i)]
        workload.append((u, v, int(rng.integers(0, w + 1))))

    start = time.perf_counter_ns()
    for u, v, d in workload:
        cap_query(oracle.cap_tree, u, v, d)
    cap_ns = (time.perf_counter_ns() - start) / max(1, queries)

    sizes = []
    start = time.perf_counter_ns()
    for u, v, d in workload:
        sizes.append(len(cut_query(oracle, u, v, d).side))
    cut_ns = (time.perf_counter_ns() - start) / max(1, queries)

    row = BenchRow(n=n, steiner=len(g.steiner), build_ms=round(build_ms, 2), words_stored=words,
                   baseline_words=baseline_words, avg_cap_query_ns=round(cap_ns, 1),
                   avg_cut_query_ns=round(cut_ns, 1), avg_cut_size=round(float(np.mean(sizes)), 2) if sizes else 0.0)
    logger.info(f"✅ n={n} |S|={row.steiner}: build {row.build_ms} ms, {words} words")
    return row


def run_bench(family: FamilySpec, queries: int = 200, sizes: Optional[tuple[int, ...]] = None,
              with_baseline: bool = True) -> list[BenchRow]:
    logger.info(f"🏗️ Bench family {family.name}: sizes={list(sizes or family.sizes)} rule={family.steiner_rule}")
    return [bench_instance(n, family, queries, with_baseline) for n in (sizes or family.sizes)]


def to_table(rows: list[BenchRow]) -> str:
    lines = [" ".join(COLUMNS)]
    for row in rows:
        lines.append(" ".join(str(v) for v in asdict(row).values()))
    return "\n".join(lines) + "\n"


def to_json(rows: list[BenchRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)


def fit_exponent(rows: list[BenchRow]) -> Optional[float]:
    """Least-squares slope of log(words) against log(n): ~1 linear, ~2 quadratic."""
    if len(rows) < 2:
        return None
    xs = np.log([r.n for r in rows])
    ys = np.log([max(1, r.words_stored) for r in rows])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
