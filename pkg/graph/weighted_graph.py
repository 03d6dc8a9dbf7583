"""
Undirected weighted graph with a Steiner set, plus the cut arithmetic every
other module builds on.

Graphs are immutable after construction: parallel edges are merged by summing
capacities, so an edge is identified by its unordered vertex pair.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from common.errors import (
    DeltaOutOfRangeError,
    EdgeNotFoundError,
    InvalidCutError,
    SteinerSetError,
    SteinerSentryError,
)
from common.naming import edge_key

logger = logging.getLogger(__name__)

Edge = tuple[int, int, int]

# Largest capacity sum for which 1 + total still fits a signed 64-bit word
MAX_CAPACITY = 2 ** 63 - 1


class WeightedGraph:
    """
    Immutable undirected multigraph (merged) on vertices 0..n-1.

    Capacities are non-negative integers. `steiner` is the set S; at least two
    Steiner vertices are required unless require_steiner=False (used for
    contracted helper graphs that never answer Steiner queries).
    """

    __slots__ = ("n", "steiner", "_weights", "_adj", "_total")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]], steiner: Iterable[int],
                 require_steiner: bool = True):
        if n < 1:
            raise SteinerSentryError(f"graph needs at least one vertex, got n={n}", code="empty_graph")
        self.n = n

        weights: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise SteinerSentryError(f"self-loop on vertex {u}", code="self_loop")
            if not isinstance(w, int) or isinstance(w, bool):
                raise SteinerSentryError(f"capacity of ({u},{v}) must be an integer, got {w!r}",
                                         code="non_integer")
            if w < 0:
                raise SteinerSentryError(f"negative capacity {w} on ({u},{v})", code="negative_capacity")
            key = edge_key(u, v)
            weights[key] = weights.get(key, 0) + w
        self._weights = dict(sorted(weights.items()))

        steiner_set = frozenset(steiner)
        for s in steiner_set:
            self._check_vertex(s)
        if require_steiner and len(steiner_set) < 2:
            raise SteinerSetError(f"Steiner set must contain at least two vertices, got {len(steiner_set)}")
        self.steiner = steiner_set

        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for (u, v), w in self._weights.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        self._adj = adj
        self._total = sum(self._weights.values())
        if self._total >= MAX_CAPACITY:
            raise SteinerSentryError(f"total capacity {self._total} does not fit a signed 64-bit word",
                                     code="capacity_overflow")

    def _check_vertex(self, v: int):
        if not isinstance(v, int) or v < 0 or v >= self.n:
            raise SteinerSentryError(f"vertex {v!r} outside 0..{self.n - 1}", code="vertex_out_of_range")

    # ------------------------------------------------------------------
    # Read access
    # ------------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._weights)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edges(self) -> list[Edge]:
        """Edges in canonical order (sorted by (min endpoint, max endpoint))."""
        return [(u, v, w) for (u, v), w in self._weights.items()]

    @property
    def total_capacity(self) -> int:
        return self._total

    @property
    def sorted_steiner(self) -> list[int]:
        return sorted(self.steiner)

    def is_steiner(self, v: int) -> bool:
        return v in self.steiner

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._weights

    def weight(self, u: int, v: int) -> int:
        try:
            return self._weights[edge_key(u, v)]
        except KeyError:
            raise EdgeNotFoundError(f"({u},{v}) is not an edge of the graph") from None

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        return self._adj[v]

    def check_delta(self, u: int, v: int, delta: int) -> int:
        """Validates 0 <= delta <= w(u,v) and returns w(u,v)."""
        w = self.weight(u, v)
        if delta < 0 or delta > w:
            raise DeltaOutOfRangeError(f"delta={delta} outside [0, {w}] for edge ({u},{v})")
        return w

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, |S|={len(self.steiner)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.steiner == other.steiner and self._weights == other._weights

    def __hash__(self) -> int:
        return hash((self.n, self.steiner, tuple(self._weights.items())))


@dataclass(frozen=True)
class Cut:
    """One side of a vertex bipartition together with its capacity."""
    side: frozenset
    capacity: int

    def __contains__(self, v: int) -> bool:
        return v in self.side

    def __len__(self) -> int:
        return len(self.side)

    def sorted_side(self) -> list[int]:
        return sorted(self.side)

    def complement(self, n: int) -> frozenset:
        return frozenset(range(n)) - self.side


class EdgeKind(Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3


@dataclass(frozen=True)
class EdgeType:
    kind: EdgeKind
    steiner_end: Optional[int] = None
    nonsteiner_end: Optional[int] = None


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------

def classify_edge(g: WeightedGraph, u: int, v: int) -> EdgeType:
    """Type-1: both endpoints nonSteiner; Type-2: both Steiner; Type-3: exactly one Steiner."""
    if not g.has_edge(u, v):
        raise EdgeNotFoundError(f"({u},{v}) is not an edge of the graph")
    su, sv = g.is_steiner(u), g.is_steiner(v)
    if su and sv:
        return EdgeType(EdgeKind.TYPE2)
    if not su and not sv:
        return EdgeType(EdgeKind.TYPE1)
    if su:
        return EdgeType(EdgeKind.TYPE3, steiner_end=u, nonsteiner_end=v)
    return EdgeType(EdgeKind.TYPE3, steiner_end=v, nonsteiner_end=u)


def _validated_side(g: WeightedGraph, side: Iterable[int]) -> frozenset:
    members = side if isinstance(side, frozenset) else frozenset(side)
    if not members:
        raise InvalidCutError("cut side is empty")
    if len(members) >= g.n:
        raise InvalidCutError("cut side must be a proper subset of V")
    for v in members:
        if v < 0 or v >= g.n:
            raise InvalidCutError(f"vertex {v} outside 0..{g.n - 1}")
    return members


def cut_capacity(g: WeightedGraph, side: Iterable[int]) -> int:
    """Sum of w(e) over edges with exactly one endpoint in side."""
    members = _validated_side(g, side)
    return _crossing_weight(g, members)


def _crossing_weight(g: WeightedGraph, members: frozenset) -> int:
    total = 0
    for v in members:
        for x, w in g.neighbors(v):
            if x not in members:
                total += w
    return total


def is_steiner_cut(g: WeightedGraph, side: Iterable[int]) -> bool:
    """True iff both the side and its complement hold a Steiner vertex."""
    members = _validated_side(g, side)
    inside = len(members & g.steiner)
    return 0 < inside < len(g.steiner)


def make_cut(g: WeightedGraph, side: Iterable[int]) -> Cut:
    members = _validated_side(g, side)
    return Cut(members, _crossing_weight(g, members))


def contributes(side: frozenset, u: int, v: int) -> bool:
    return (u in side) != (v in side)


def cuts_cross(a: Iterable[int], b: Iterable[int], n: int) -> bool:
    """Crossing cuts: A∩B, A∖B, B∖A and the complement of A∪B are all nonempty."""
    sa, sb = set(a), set(b)
    return bool(sa & sb) and bool(sa - sb) and bool(sb - sa) and len(sa | sb) < n


def modified(g: WeightedGraph, u: int, v: int, delta: int) -> WeightedGraph:
    """Copy of g with w(u,v) reduced by delta (edge kept even at zero capacity)."""
    g.check_delta(u, v, delta)
    key = edge_key(u, v)
    edges = [(a, b, w - delta if (a, b) == key else w) for a, b, w in g.edges]
    return WeightedGraph(g.n, edges, g.steiner)


def with_steiner(g: WeightedGraph, steiner: Iterable[int]) -> WeightedGraph:
    return WeightedGraph(g.n, g.edges, steiner)


def scaled(g: WeightedGraph, factor: int) -> WeightedGraph:
    return WeightedGraph(g.n, [(u, v, w * factor) for u, v, w in g.edges], g.steiner)


def contract(g: WeightedGraph, group_of: list[int], groups: int) -> WeightedGraph:
    """
    Contracts vertices into `groups` super-vertices (group_of[v] in 0..groups-1).
    Edges inside a group vanish; parallel edges between groups are summed.
    """
    edges = []
    for u, v, w in g.edges:
        gu, gv = group_of[u], group_of[v]
        if gu != gv:
            edges.append((gu, gv, w))
    return WeightedGraph(groups, edges, (), require_steiner=False)
