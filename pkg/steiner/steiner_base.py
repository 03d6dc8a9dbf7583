import logging
from dataclasses import dataclass
from typing import Optional

from common.errors import EdgeTypeError, NotVitalError, SteinerSentryError, UniquenessViolation
from flow.mincut_engine import MinCutEngine, MinCutResult
from graph.weighted_graph import Cut, EdgeKind, WeightedGraph, classify_edge
from oracle.gomory_hu import GomoryHuTree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeMincut:
    edge: tuple[int, int, int]
    capacity: int
    cut: Cut
    vital: bool

    @property
    def margin(self) -> int:
        """c(C(e)) - w(e): the Steiner mincut capacity of G without e, if e is vital."""
        return self.capacity - self.edge[2]


@dataclass(frozen=True)
class NearestMincut:
    edge: tuple[int, int]
    cut: Cut


class SteinerCutAnalyzer:
    """
    Steiner-mincut primitives over one graph, sharing a memoizing MinCutEngine.

    Holds λ_S and every mincut for an edge computed so far, so the oracle
    builders and the property suite never repeat a max-flow.
    """

    def __init__(self, graph: WeightedGraph, engine: Optional[MinCutEngine] = None):
        self.graph = graph
        self.engine = engine or MinCutEngine(graph)
        self._steiner = graph.sorted_steiner
        self._mincut: Optional[Cut] = None
        self._edge_cache: dict[tuple[int, int], EdgeMincut] = {}
        self._nearest_cache: dict[tuple[int, int], NearestMincut] = {}
        self._gh: Optional[GomoryHuTree] = None

    # ------------------------------------------------------------------
    # λ_S
    # ------------------------------------------------------------------

    def steiner_mincut(self) -> tuple[int, Cut]:
        """
        λ_S and a witnessing Steiner cut: the minimum over s' in S∖{s0} of the
        (s0, s') minimum cut, for s0 = min S.
        """
        if self._mincut is None:
            s0 = self._steiner[0]
            best: Optional[MinCutResult] = None
            for s in self._steiner[1:]:
                result = self.engine.min_cut({s0}, {s})
                if best is None or result.capacity < best.capacity:
                    best = result
            self._mincut = Cut(best.side, best.capacity)
            logger.debug(f"λ_S = {best.capacity} witnessed by {sorted(best.side)}")
        return self._mincut.capacity, self._mincut

    @property
    def lambda_s(self) -> int:
        return self.steiner_mincut()[0]

    def attach_gh_tree(self, gh: GomoryHuTree):
        """
        Share a Gomory-Hu tree of the same graph.

        Type-2 edges then read C(e) off the tree path, and every terminal-pair flow
        is skipped when the tree's pairwise bound already exceeds the best capacity.
        """
        if gh.graph != self.graph:
            raise SteinerSentryError("Gomory-Hu tree was built for a different graph", code="graph_mismatch")
        self._gh = gh

    def _pair_bound(self, sources, sinks) -> int:
        # Any cut separating the two sets separates every (a, b) pair across them
        if self._gh is None:
            return 0
        return max(self._gh.path_min(a, b)[0] for a in sources for b in sinks)

    # ------------------------------------------------------------------
    # Mincut for an edge
    # ------------------------------------------------------------------

    def mincut_for_edge(self, x: int, y: int) -> EdgeMincut:
        """
        Minimum-capacity Steiner cut to which (x, y) contributes, oriented to contain x.

        Every such cut contains x, excludes y and holds a Steiner vertex on each side.
        Anchoring one Steiner vertex s0 (x or y itself when Steiner) splits the search
        into 's0 inside' and 's0 outside', each a min cut between contracted terminal pairs.
        Ties go to the earliest pair, with or without a Gomory-Hu tree attached.
        """
        cached = self._edge_cache.get((x, y))
        if cached is not None:
            return cached

        w = self.graph.weight(x, y)
        steiner = self.graph.steiner
        if self._gh is not None and x in steiner and y in steiner:
            capacity, child = self._gh.path_min(x, y)
            side = self._gh.side_of_edge(child, x)
        else:
            pairs = list(self._terminal_pairs(x, y))
            bounds = [self._pair_bound(src, snk) for src, snk in pairs]
            best: Optional[tuple[int, int, frozenset]] = None
            for idx in sorted(range(len(pairs)), key=lambda i: (bounds[i], i)):
                if best is not None and bounds[idx] > best[0]:
                    break
                result = self.engine.min_cut(*pairs[idx])
                if best is None or (result.capacity, idx) < best[:2]:
                    best = (result.capacity, idx, result.side)
            capacity, _, side = best

        lam = self.lambda_s
        answer = EdgeMincut(edge=(x, y, w), capacity=capacity, cut=Cut(side, capacity),
                            vital=capacity - w < lam)
        self._edge_cache[(x, y)] = answer
        return answer

    def _terminal_pairs(self, x: int, y: int):
        steiner = self.graph.steiner
        if x in steiner and y in steiner:
            yield {x}, {y}
        elif x in steiner:
            for s in self._steiner:
                if s != x:
                    yield {x}, {y, s}
        elif y in steiner:
            for s in self._steiner:
                if s != y:
                    yield {x, s}, {y}
        else:
            s0 = self._steiner[0]
            for s in self._steiner[1:]:
                yield {x, s0}, {y, s}
            for s in self._steiner[1:]:
                yield {x, s}, {y, s0}

    def is_vital(self, x: int, y: int) -> bool:
        return self.mincut_for_edge(x, y).vital

    def all_edge_mincuts(self) -> dict[tuple[int, int], EdgeMincut]:
        """C(e) for every edge, keyed and oriented by the canonical (min, max) pair."""
        return {(u, v): self.mincut_for_edge(u, v) for u, v, _ in self.graph.edges}

    def vital_edges(self) -> list[EdgeMincut]:
        return [em for em in self.all_edge_mincuts().values() if em.vital]

    # ------------------------------------------------------------------
    # Nearest mincut for a vital Type-3 edge
    # ------------------------------------------------------------------

    def nearest_mincut(self, a: int, b: int) -> NearestMincut:
        """
        The unique inclusion-minimal mincut for the vital Type-3 edge {a, b} that
        contains its Steiner endpoint.

        Candidates are the residual-minimal source sides of min_cut({x}, {u, s'})
        for every s' reaching c(C(e)); all must contain the smallest one.
        """
        etype = classify_edge(self.graph, a, b)
        if etype.kind is not EdgeKind.TYPE3:
            raise EdgeTypeError(f"({a},{b}) is {etype.kind.name}, nearest mincuts need a Type-3 edge")
        x, u = etype.steiner_end, etype.nonsteiner_end

        cached = self._nearest_cache.get((x, u))
        if cached is not None:
            return cached

        em = self.mincut_for_edge(x, u)
        if not em.vital:
            raise NotVitalError(f"({x},{u}) is not vital; its nearest mincut need not be unique")

        candidates = []
        for s in self._steiner:
            if s == x or self._pair_bound({x}, {u, s}) > em.capacity:
                continue
            result = self.engine.min_cut({x}, {u, s}, want_minimal=True)
            if result.capacity == em.capacity:
                candidates.append(result.side)

        nearest = min(candidates, key=lambda side: (len(side), sorted(side)))
        for other in candidates:
            if not nearest <= other:
                raise UniquenessViolation(
                    f"nearest mincut for ({x},{u}) is not unique: {sorted(nearest)} vs {sorted(other)}")

        answer = NearestMincut(edge=(x, u), cut=Cut(nearest, em.capacity))
        self._nearest_cache[(x, u)] = answer
        return answer


# ----------------------------------------------------------------------
# One-shot helpers
# ----------------------------------------------------------------------

def steiner_mincut(g: WeightedGraph) -> tuple[int, Cut]:
    return SteinerCutAnalyzer(g).steiner_mincut()


def mincut_for_edge(g: WeightedGraph, x: int, y: int) -> EdgeMincut:
    return SteinerCutAnalyzer(g).mincut_for_edge(x, y)


def is_vital(g: WeightedGraph, x: int, y: int) -> bool:
    return SteinerCutAnalyzer(g).is_vital(x, y)


def nearest_mincut(g: WeightedGraph, x: int, u: int) -> NearestMincut:
    return SteinerCutAnalyzer(g).nearest_mincut(x, u)


def vital_edges(g: WeightedGraph) -> list[EdgeMincut]:
    return SteinerCutAnalyzer(g).vital_edges()
