"""
Executable structural properties of Steiner mincuts and of the oracles, each
checked against exhaustive enumeration. A run produces one record per property:
how many instances were checked, how many failed and the first counterexample.
"""
import json
import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

import numpy as np

from common.errors import BruteForceLimitError, SteinerSentryError
from common.naming import edge_key
from config.settings import get_settings
from flow.mincut_engine import MinCutEngine
from generators.random_graphs import gen_random
from graph.graph_io import write_graph
from graph.weighted_graph import (
    EdgeKind,
    WeightedGraph,
    classify_edge,
    contributes,
    cut_capacity,
    cuts_cross,
    is_steiner_cut,
)
from oracle.cap_oracle import cap_query
from oracle.cut_oracle import FullOracle, build_baseline_oracle, baseline_cut_query, build_full_oracle, cut_query
from oracle.gomory_hu import build_gh_tree, gh_query
from steiner.steiner_base import SteinerCutAnalyzer
from verify.brute_force import BruteForceAnswer, all_mincuts_for_edge, brute_mincuts_after, brute_steiner_mincut

logger = logging.getLogger(__name__)

OracleFactory = Callable[[WeightedGraph], FullOracle]

# Caps the pairs examined by the intersection check on graphs with many mincuts per edge
MAX_MINCUTS_PER_EDGE = 16


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    def check(self, ok: bool, detail: Callable[[], str]):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = detail()

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def merge(self, other: "PropertyResult"):
        self.checked += other.checked
        self.failures += other.failures
        if self.counterexample is None:
            self.counterexample = other.counterexample


@dataclass
class PropertyReport:
    results: list[PropertyResult] = field(default_factory=list)
    graphs: int = 0
    failing_graphs: list[WeightedGraph] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def total_failures(self) -> int:
        return sum(r.failures for r in self.results)

    def get(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed_names(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def absorb(self, other: "PropertyReport"):
        for r in other.results:
            try:
                self.get(r.name).merge(r)
            except KeyError:
                self.results.append(PropertyResult(r.name, r.checked, r.failures, r.counterexample))
        self.graphs += other.graphs
        self.failing_graphs.extend(other.failing_graphs)

    def to_text(self) -> str:
        lines = [f"graphs {self.graphs}"]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.name} checked={r.checked} failures={r.failures}"
            if r.counterexample:
                line += f" first={r.counterexample}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict]:
        return [{"name": r.name, "checked": r.checked, "failures": r.failures,
                 "counterexample": r.counterexample} for r in self.results]

    def to_json(self) -> str:
        return json.dumps({"graphs": self.graphs, "passed": self.passed, "properties": self.to_records()},
                          indent=2, sort_keys=True)


def _any_capacity(g: WeightedGraph, side: frozenset) -> int:
    """Cut capacity that also accepts the empty set and V (both 0)."""
    if not side or len(side) == g.n:
        return 0
    return cut_capacity(g, side)


def _is_mincut_for(g: WeightedGraph, side: frozenset, x: int, y: int, target: int) -> bool:
    if not side or len(side) == g.n:
        return False
    return is_steiner_cut(g, side) and contributes(side, x, y) and cut_capacity(g, side) == target


def delta_samples(w: int, rng: np.random.Generator) -> list[int]:
    values = {0, min(1, w), math.ceil(w / 2), w, int(rng.integers(0, w + 1))}
    return sorted(values)


class PropertySuite:
    """
    Runs every property against one graph. Checks are independent: a broken
    oracle fails the oracle checks while the cut-structure checks still run.
    """

    def __init__(self, graph: WeightedGraph, oracle_factory: Optional[OracleFactory] = None,
                 seed: Optional[int] = None):
        settings = get_settings()
        if graph.n > settings.suite_limit:
            raise BruteForceLimitError(f"property suite needs n <= {settings.suite_limit}, got n={graph.n}")
        self.graph = graph
        self.oracle_factory = oracle_factory or build_full_oracle
        self.rng = np.random.default_rng(settings.seed if seed is None else seed)

        self.brute: BruteForceAnswer = brute_steiner_mincut(graph)
        self.analyzer = SteinerCutAnalyzer(graph)
        self._results: list[PropertyResult] = []

    def run(self) -> PropertyReport:
        g = self.graph
        logger.info(f"🔍 Property suite on {g}")

        # 1. Steiner mincut and per-edge mincuts
        self._guarded("steiner_mincut", self._check_steiner_mincut)
        self._guarded("mincut_for_edge", self._check_edge_mincuts)

        # 2. Cut inequalities
        self._guarded("submodularity", self._check_submodularity)

        # 3. Nearest mincuts of vital Type-3 edges
        vital3 = self._vital_type3_by_vertex()
        self._guarded("uniqueness", self._check_uniqueness, vital3)
        self._guarded("disjoint", self._check_disjoint, vital3)
        self._guarded("intersection", self._check_intersection, vital3)
        self._guarded("subset", self._check_subset, vital3)
        self._guarded("laminarity", self._check_laminarity, vital3)

        # 4. Gomory-Hu tree
        self._guarded("gomory_hu", self._check_gomory_hu)

        # 5. Oracles
        oracle = self._guarded("oracle_build", self.oracle_factory, g)
        if oracle is not None:
            self._guarded("cap_tree_lca", self._check_cap_tree_lca, oracle)
            self._guarded("type3_forest", self._check_type3_forest, oracle, vital3)
            self._guarded("cap_query", self._check_queries, oracle)

        report = PropertyReport(results=self._results, graphs=1)
        if report.passed:
            logger.info(f"✅ All {len(self._results)} properties hold on {g}")
        else:
            logger.error(f"❌ Violated on {g}: {', '.join(report.failed_names())}")
            report.failing_graphs.append(g)
        return report

    def _guarded(self, name: str, check: Callable, *args):
        """Runs one check; any exception becomes a failure of `name` instead of aborting the suite."""
        try:
            return check(*args)
        except SteinerSentryError as e:
            logger.warning(f"⚠️ {name} raised {e.code}: {e}")
            r = self._result(f"{name}_error")
            r.check(False, lambda: f"{e.code}: {e}")
            return None
        except Exception as e:
            kind = type(e).__name__
            logger.error(f"❌ Unexpected {kind} in {name}: {e}")
            r = self._result(f"{name}_error")
            r.check(False, lambda: f"{kind}: {e}")
            return None

    def _result(self, name: str) -> PropertyResult:
        r = PropertyResult(name)
        self._results.append(r)
        return r

    # ------------------------------------------------------------------

    def _check_steiner_mincut(self):
        r = self._result("steiner_mincut")
        lam, cut = self.analyzer.steiner_mincut()
        r.check(lam == self.brute.lambda_s, lambda: f"flow λ_S={lam}, enumeration {self.brute.lambda_s}")
        r.check(is_steiner_cut(self.graph, cut.side) and cut_capacity(self.graph, cut.side) == lam,
                lambda: f"witness {sorted(cut.side)} is not a Steiner cut of capacity {lam}")

    def _check_edge_mincuts(self):
        r = self._result("mincut_for_edge")
        v = self._result("vitality")
        g = self.graph
        for x, y, w in g.edges:
            for a, b in ((x, y), (y, x)):
                em = self.analyzer.mincut_for_edge(a, b)
                want = self.brute.edge_capacity[(x, y)]
                side = em.cut.side
                r.check(em.capacity == want and a in side and b not in side and _is_mincut_for(g, side, a, b, want),
                        lambda: f"edge ({a},{b}): flow {em.capacity} side {sorted(side)}, enumeration {want}")
            vital = self.analyzer.is_vital(x, y)
            v.check(vital == self.brute.vital[(x, y)],
                    lambda: f"edge ({x},{y}): flow says vital={vital}, enumeration {self.brute.vital[(x, y)]}")

    def _check_submodularity(self):
        r = self._result("submodularity")
        g = self.graph
        for _ in range(32):
            a = frozenset(int(v) for v in np.flatnonzero(self.rng.random(g.n) < 0.5))
            b = frozenset(int(v) for v in np.flatnonzero(self.rng.random(g.n) < 0.5))
            ca, cb = _any_capacity(g, a), _any_capacity(g, b)
            first = ca + cb >= _any_capacity(g, a & b) + _any_capacity(g, a | b)
            second = ca + cb >= _any_capacity(g, a - b) + _any_capacity(g, b - a)
            r.check(first and second, lambda: f"A={sorted(a)} B={sorted(b)}")

    def _vital_type3_by_vertex(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        g = self.graph
        for x, y, _ in g.edges:
            etype = classify_edge(g, x, y)
            if etype.kind is EdgeKind.TYPE3 and self.brute.vital[(x, y)]:
                out.setdefault(etype.nonsteiner_end, []).append(etype.steiner_end)
        return out

    def _brute_nearest(self, s: int, u: int) -> list[frozenset]:
        cuts = all_mincuts_for_edge(self.brute, s, u)
        return [c for c in cuts if not any(o < c for o in cuts)]

    def _check_uniqueness(self, vital3: dict[int, list[int]]):
        r = self._result("uniqueness")
        for u, ends in vital3.items():
            for s in ends:
                nearest = self._brute_nearest(s, u)
                flow = self.analyzer.nearest_mincut(s, u).cut.side
                r.check(len(nearest) == 1 and nearest[0] == flow,
                        lambda: f"edge ({s},{u}): enumeration {[sorted(c) for c in nearest]}, flow {sorted(flow)}")

    def _check_disjoint(self, vital3: dict[int, list[int]]):
        r = self._result("disjoint")
        for u, ends in vital3.items():
            for s1, s2 in combinations(ends, 2):
                c1 = self.analyzer.nearest_mincut(s1, u).cut.side
                c2 = self.analyzer.nearest_mincut(s2, u).cut.side
                r.check((s2 not in c1 and s1 not in c2) == (not c1 & c2),
                        lambda: f"N({s1},{u})={sorted(c1)} N({s2},{u})={sorted(c2)}")

    def _check_intersection(self, vital3: dict[int, list[int]]):
        r = self._result("intersection")
        g = self.graph
        for u, ends in vital3.items():
            for s1, s2 in combinations(ends, 2):
                for a, b in ((s1, s2), (s2, s1)):
                    target = self.brute.edge_capacity[edge_key(b, u)]
                    for c1 in all_mincuts_for_edge(self.brute, a, u)[:MAX_MINCUTS_PER_EDGE]:
                        for c2 in all_mincuts_for_edge(self.brute, b, u)[:MAX_MINCUTS_PER_EDGE]:
                            meet = c1 & c2
                            r.check((b in c1) == _is_mincut_for(g, meet, b, u, target),
                                    lambda: f"C1={sorted(c1)} for ({a},{u}), C2={sorted(c2)} for ({b},{u})")

    def _check_subset(self, vital3: dict[int, list[int]]):
        r = self._result("subset")
        for u, ends in vital3.items():
            for a, b in ((p, q) for p in ends for q in ends if p != q):
                na = self.analyzer.nearest_mincut(a, u).cut.side
                nb = self.analyzer.nearest_mincut(b, u).cut.side
                r.check((b in na) == (nb <= na), lambda: f"N({a},{u})={sorted(na)} N({b},{u})={sorted(nb)}")

    def _check_laminarity(self, vital3: dict[int, list[int]]):
        r = self._result("laminarity")
        # Every member excludes u, so crossing as cuts is crossing as sets
        for u, ends in vital3.items():
            sides = [self.analyzer.nearest_mincut(s, u).cut.side for s in ends]
            for c1, c2 in combinations(sides, 2):
                r.check(not cuts_cross(c1, c2, self.graph.n),
                        lambda: f"L({u}) members {sorted(c1)} and {sorted(c2)} cross")

    def _check_gomory_hu(self):
        r = self._result("gomory_hu")
        t2 = self._result("gomory_hu_type2")
        g = self.graph
        tree = build_gh_tree(g)
        engine = MinCutEngine(g)
        for a, b in combinations(range(g.n), 2):
            cap, cut = gh_query(tree, a, b)
            want = engine.min_cut({a}, {b}).capacity
            r.check(cap == want and a in cut.side and b not in cut.side and cut_capacity(g, cut.side) == want,
                    lambda: f"pair ({a},{b}): tree {cap} side {sorted(cut.side)}, max-flow {want}")
        for x, y, _ in g.edges:
            if classify_edge(g, x, y).kind is not EdgeKind.TYPE2:
                continue
            _, cut = gh_query(tree, x, y)
            want = self.brute.edge_capacity[(x, y)]
            t2.check(_is_mincut_for(g, cut.side, x, y, want),
                     lambda: f"Type-2 edge ({x},{y}): tree side {sorted(cut.side)} is not a mincut of capacity {want}")

    def _check_cap_tree_lca(self, oracle: FullOracle):
        r = self._result("cap_tree_lca")
        for x, y, _ in self.graph.edges:
            got = oracle.cap_tree.cap_at(x, y)
            want = self.brute.edge_capacity[(x, y)]
            r.check(got == want, lambda: f"edge ({x},{y}): cap at LCA {got}, enumeration {want}")

    def _check_type3_forest(self, oracle: FullOracle, vital3: dict[int, list[int]]):
        r = self._result("type3_forest")
        for u, ends in vital3.items():
            for s in ends:
                want = self._brute_nearest(s, u)
                got = oracle.type3.tree_for(u).subtree_set(s) if u in oracle.type3.trees else None
                r.check(got is not None and [got] == want,
                        lambda: f"SubTree({s}) in L({u}) = {sorted(got or [])}, nearest {[sorted(c) for c in want]}")

    def _check_queries(self, oracle: FullOracle):
        cap_r = self._result("cap_query")
        mono_r = self._result("cap_monotone")
        cut_r = self._result("cut_query")
        base_r = self._result("baseline_parity")
        g = self.graph
        baseline = build_baseline_oracle(g, self.analyzer)

        for x, y, w in g.edges:
            previous = None
            for delta in delta_samples(w, self.rng):
                truth, mincuts = brute_mincuts_after(self.brute, x, y, delta)

                cap = cap_query(oracle.cap_tree, x, y, delta)
                cap_r.check(cap.capacity == truth and cap.changed == (truth < self.brute.lambda_s),
                            lambda: f"edge ({x},{y}) delta={delta}: cap_query {cap.capacity}, enumeration {truth}")
                mono_r.check(previous is None or cap.capacity <= previous,
                             lambda: f"edge ({x},{y}) delta={delta}: {cap.capacity} > {previous}")
                previous = cap.capacity

                answer = cut_query(oracle, x, y, delta)
                cut_r.check(self._valid_answer(answer.side, answer.capacity, x, y, delta, truth, mincuts),
                            lambda: f"edge ({x},{y}) delta={delta}: side {sorted(answer.side)} "
                                    f"cap {answer.capacity}, λ after {truth}")

                ref = baseline_cut_query(baseline, x, y, delta)
                base_r.check(ref.capacity == answer.capacity
                             and self._valid_answer(ref.side, ref.capacity, x, y, delta, truth, mincuts),
                             lambda: f"edge ({x},{y}) delta={delta}: baseline {ref.capacity}, oracle {answer.capacity}")

    def _valid_answer(self, side: frozenset, capacity: int, x: int, y: int, delta: int, truth: int,
                      mincuts: list[frozenset]) -> bool:
        g = self.graph
        if not side or len(side) == g.n or not is_steiner_cut(g, side):
            return False
        after = cut_capacity(g, side) - (delta if contributes(side, x, y) else 0)
        if after != truth or capacity != truth:
            return False
        canonical = side if 0 in side else frozenset(range(g.n)) - side
        return canonical in mincuts


def run_property_suite(g: WeightedGraph, oracle_factory: Optional[OracleFactory] = None,
                       seed: Optional[int] = None) -> PropertyReport:
    return PropertySuite(g, oracle_factory, seed).run()


def run_corpus(count: int, seed: Optional[int] = None, n_range: tuple[int, int] = (4, 12),
               density: float = 0.4, weights: tuple[int, int] = (1, 6),
               oracle_factory: Optional[OracleFactory] = None) -> PropertyReport:
    """Seeded random graphs with |S| cycling through 2, ceil(n/2) and n."""
    seed = get_settings().seed if seed is None else seed
    rng = np.random.default_rng(seed)
    total = PropertyReport()
    lo, hi = n_range
    for i in range(count):
        n = int(rng.integers(lo, hi + 1))
        k = (2, max(2, math.ceil(n / 2)), n)[i % 3]
        g = gen_random(n, density, weights, 1.0, int(rng.integers(0, 2 ** 31)), steiner_count=k)
        total.absorb(run_property_suite(g, oracle_factory, seed=int(rng.integers(0, 2 ** 31))))
        logger.debug(f"corpus graph {i + 1}/{count}: {g}")
    logger.info(f"{'✅' if total.passed else '❌'} Corpus of {count} graphs: {total.total_failures} failures")
    return total


def counterexample_texts(report: PropertyReport) -> list[str]:
    return [write_graph(g, comment=f"failed: {', '.join(report.failed_names())}") for g in report.failing_graphs]
