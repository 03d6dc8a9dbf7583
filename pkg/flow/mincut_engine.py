import logging
import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import networkx as nx
from networkx.algorithms.flow import boykov_kolmogorov

from common.errors import FlowProblemError, SteinerSentryError
from graph.weighted_graph import WeightedGraph, cut_capacity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlowProblem:
    graph: WeightedGraph
    sources: frozenset
    sinks: frozenset


@dataclass(frozen=True)
class MinCutResult:
    capacity: int
    side: frozenset
    minimal: bool
    flow_value: int


class MinCutEngine:
    """
    Exact minimum cut between two vertex sets of one immutable graph.

    Terminal sets are contracted through a super-source and a super-sink joined
    by arcs of capacity 1 + (sum of all capacities), which no finite cut can reach.
    The super-terminals live in the shared network permanently; only their arcs
    are added for one solve and removed afterwards, under a lock.
    Results are memoized per (sources, sinks, want_minimal).
    """

    def __init__(self, graph: WeightedGraph, memoize: bool = True):
        self.graph = graph
        self.infinity = graph.total_capacity + 1
        self._super_source = graph.n
        self._super_sink = graph.n + 1
        self._memo: Optional[dict] = {} if memoize else None
        self.flow_count = 0

        base = nx.Graph()
        base.add_nodes_from(range(graph.n + 2))
        for u, v, w in graph.edges:
            base.add_edge(u, v, capacity=w)
        self._base = base
        self._lock = threading.Lock()

    def min_cut(self, sources: Iterable[int], sinks: Iterable[int], want_minimal: bool = True) -> MinCutResult:
        src, snk = frozenset(sources), frozenset(sinks)
        self._validate(src, snk)

        key = (src, snk, want_minimal)
        if self._memo is not None and key in self._memo:
            return self._memo[key]

        result = self._solve(src, snk, want_minimal)

        if self._memo is not None:
            self._memo[key] = result
        return result

    def solve(self, problem: FlowProblem, want_minimal: bool = True) -> MinCutResult:
        if problem.graph is not self.graph:
            raise FlowProblemError("flow problem belongs to a different graph")
        return self.min_cut(problem.sources, problem.sinks, want_minimal)

    # ------------------------------------------------------------------

    def _validate(self, src: frozenset, snk: frozenset):
        if not src or not snk:
            raise FlowProblemError("sources and sinks must both be nonempty")
        if src & snk:
            raise FlowProblemError(f"sources and sinks overlap on {sorted(src & snk)}")
        n = self.graph.n
        for v in src | snk:
            if v < 0 or v >= n:
                raise FlowProblemError(f"terminal {v} outside 0..{n - 1}")

    def _solve(self, src: frozenset, snk: frozenset, want_minimal: bool) -> MinCutResult:
        with self._lock:
            s, t, arcs = self._attach_terminals(src, snk)
            try:
                residual = boykov_kolmogorov(self._base, s, t, capacity="capacity")
            finally:
                self._base.remove_edges_from(arcs)
        flow_value = int(residual.graph["flow_value"])
        self.flow_count += 1

        if want_minimal:
            reached = _reachable_from(residual, s)
            side = frozenset(v for v in reached if v < self.graph.n)
        else:
            # Maximal source side: everything that cannot reach the sink.
            blocked = _reaching(residual, t)
            side = frozenset(v for v in range(self.graph.n) if v not in blocked)

        side = side | src
        capacity = cut_capacity(self.graph, side)
        if capacity != flow_value:
            raise SteinerSentryError(
                f"max-flow {flow_value} disagrees with witnessing cut capacity {capacity}", code="flow_mismatch")

        logger.debug(f"min_cut {sorted(src)} | {sorted(snk)} -> {flow_value} (|side|={len(side)})")
        return MinCutResult(capacity=flow_value, side=side, minimal=want_minimal, flow_value=flow_value)

    def _attach_terminals(self, src: frozenset, snk: frozenset):
        s = next(iter(src)) if len(src) == 1 else self._super_source
        t = next(iter(snk)) if len(snk) == 1 else self._super_sink
        arcs = []
        if len(src) > 1:
            arcs.extend((s, v) for v in sorted(src))
        if len(snk) > 1:
            arcs.extend((v, t) for v in sorted(snk))
        self._base.add_edges_from(arcs, capacity=self.infinity)
        return s, t, arcs


def _reachable_from(residual: nx.DiGraph, start) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, attr in residual.succ[u].items():
            if v not in seen and attr["capacity"] - attr["flow"] > 0:
                seen.add(v)
                queue.append(v)
    return seen


def _reaching(residual: nx.DiGraph, target) -> set:
    seen = {target}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u, attr in residual.pred[v].items():
            if u not in seen and attr["capacity"] - attr["flow"] > 0:
                seen.add(u)
                queue.append(u)
    return seen


def min_cut(problem: FlowProblem, want_minimal: bool = True) -> MinCutResult:
    """One-shot helper; prefer a shared MinCutEngine when solving many problems on one graph."""
    return MinCutEngine(problem.graph, memoize=False).solve(problem, want_minimal)
