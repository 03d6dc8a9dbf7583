import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from common.errors import EdgeNotFoundError, OracleFormatError
from common.naming import edge_key
from graph.weighted_graph import WeightedGraph
from oracle.lca import EulerLCA
from steiner.steiner_base import SteinerCutAnalyzer

logger = logging.getLogger(__name__)

LEAF = -1


@dataclass(frozen=True)
class CapAnswer:
    capacity: int
    changed: bool

    def to_text(self) -> str:
        return f"{self.capacity} {'changed' if self.changed else 'unchanged'}"


class CapTree:
    """
    Full binary tree over the endpoints of a covered edge set.

    Internal node i holds cap[i], the mincut-for-edge capacity of the edge that split it,
    and left[i]/right[i]; leaves have left == right == LEAF. For a covered edge (x, y) the
    LCA of their leaves carries c(C(x, y)). With store_cuts the split cut is kept too.
    """

    def __init__(self, graph: WeightedGraph, lambda_s: int, cap: list[Optional[int]], left: list[int],
                 right: list[int], split_edge: list[Optional[tuple[int, int]]], leaf_of: dict[int, int],
                 covered: Iterable[tuple[int, int]], cuts: Optional[list[Optional[frozenset]]] = None):
        self.graph = graph
        self.lambda_s = lambda_s
        self.cap = cap
        self.left = left
        self.right = right
        self.split_edge = split_edge
        self.leaf_of = leaf_of
        self.covered = frozenset(covered)
        self.cuts = cuts

        self._validate_shape()
        children = [[] if left[i] == LEAF else [left[i], right[i]] for i in range(len(cap))]
        self._lca = EulerLCA(children, 0)

    def _validate_shape(self):
        size = len(self.cap)
        if not size or len(self.left) != size or len(self.right) != size or len(self.split_edge) != size:
            raise OracleFormatError("cap tree arrays must be nonempty and of equal length")
        if self.cuts is not None and len(self.cuts) != size:
            raise OracleFormatError("cap tree cuts must have one entry per node")
        for i in range(size):
            for child in (self.left[i], self.right[i]):
                if child != LEAF and not i < child < size:
                    raise OracleFormatError(f"node {i} has child {child} outside {i + 1}..{size - 1}")
        for v, leaf in self.leaf_of.items():
            if not 0 <= leaf < size or self.left[leaf] != LEAF:
                raise OracleFormatError(f"vertex {v} maps to {leaf}, which is not a leaf")
        for x, y in self.covered:
            if x not in self.leaf_of or y not in self.leaf_of:
                raise OracleFormatError(f"covered edge ({x},{y}) has an endpoint without a leaf")

    @property
    def node_count(self) -> int:
        return len(self.cap)

    @property
    def internal_count(self) -> int:
        return sum(1 for c in self.cap if c is not None)

    @property
    def stores_cuts(self) -> bool:
        return self.cuts is not None

    def covers(self, x: int, y: int) -> bool:
        return edge_key(x, y) in self.covered

    def node_for(self, x: int, y: int) -> int:
        if not self.covers(x, y):
            raise EdgeNotFoundError(f"({x},{y}) is not covered by this tree")
        return self._lca.lca(self.leaf_of[x], self.leaf_of[y])

    def cap_at(self, x: int, y: int) -> int:
        return self.cap[self.node_for(x, y)]

    def cut_at(self, x: int, y: int) -> frozenset:
        if self.cuts is None:
            raise OracleFormatError("this tree does not store cuts")
        return self.cuts[self.node_for(x, y)]

    def words(self) -> int:
        """Internal records (cap, left, right), leaves, the leaf map and any stored cut vertices."""
        internal = self.internal_count
        total = 3 * internal + (self.node_count - internal) + len(self.leaf_of)
        if self.cuts is not None:
            total += sum(len(c) for c in self.cuts if c is not None)
        return total

    def to_dict(self) -> dict:
        data = {
            "cap": self.cap,
            "left": self.left,
            "right": self.right,
            "split_edge": [list(e) if e else None for e in self.split_edge],
            "leaf_of": [[v, leaf] for v, leaf in sorted(self.leaf_of.items())],
            "covered": [list(e) for e in sorted(self.covered)],
        }
        if self.cuts is not None:
            data["cuts"] = [sorted(c) if c is not None else None for c in self.cuts]
        return data

    @classmethod
    def from_dict(cls, graph: WeightedGraph, lambda_s: int, data: dict) -> "CapTree":
        cuts = None
        if "cuts" in data:
            cuts = [frozenset(c) if c is not None else None for c in data["cuts"]]
        return cls(
            graph, lambda_s,
            cap=list(data["cap"]),
            left=list(data["left"]),
            right=list(data["right"]),
            split_edge=[tuple(e) if e else None for e in data["split_edge"]],
            leaf_of={int(v): int(leaf) for v, leaf in data["leaf_of"]},
            covered=[tuple(e) for e in data["covered"]],
            cuts=cuts,
        )


def build_cap_tree(g: WeightedGraph, edge_set: Optional[Iterable[tuple[int, int]]] = None,
                   analyzer: Optional[SteinerCutAnalyzer] = None, store_cuts: bool = False) -> CapTree:
    """
    Recursive split of U = V(edge_set) (or V when the set is empty).

    At each call the edge inside U with the least c(C(e)) (ties: smallest (min, max)
    pair) splits U into U ∩ C(e) and U ∖ C(e); C(e) is the mincut computed on the
    whole graph. A U with no covered edge inside becomes a leaf.
    """
    analyzer = analyzer or SteinerCutAnalyzer(g)
    lam = analyzer.lambda_s

    keys = sorted({edge_key(u, v) for u, v, _ in g.edges} if edge_set is None
                  else {edge_key(u, v) for u, v in edge_set})
    for u, v in keys:
        if not g.has_edge(u, v):
            raise EdgeNotFoundError(f"({u},{v}) is not an edge of the graph")
    mincuts = {key: analyzer.mincut_for_edge(*key) for key in keys}

    universe = frozenset(v for key in keys for v in key) if keys else frozenset(g.vertices)
    logger.debug(f"🏗️ Building cap tree over {len(keys)} edges, |U|={len(universe)}")

    cap: list[Optional[int]] = []
    left: list[int] = []
    right: list[int] = []
    split_edge: list[Optional[tuple[int, int]]] = []
    cuts: list[Optional[frozenset]] = []
    leaf_of: dict[int, int] = {}

    stack: list[tuple[frozenset, int, bool]] = [(universe, -1, True)]
    while stack:
        part, parent, is_left = stack.pop()
        node = len(cap)
        if parent >= 0:
            if is_left:
                left[parent] = node
            else:
                right[parent] = node

        inside = [key for key in keys if key[0] in part and key[1] in part]
        if not inside:
            cap.append(None)
            left.append(LEAF)
            right.append(LEAF)
            split_edge.append(None)
            cuts.append(None)
            for v in part:
                leaf_of[v] = node
            continue

        chosen = min(inside, key=lambda key: (mincuts[key].capacity, key))
        em = mincuts[chosen]
        cap.append(em.capacity)
        left.append(LEAF)
        right.append(LEAF)
        split_edge.append(chosen)
        cuts.append(em.cut.side)

        # Right is pushed first so the left child takes the next id
        stack.append((part - em.cut.side, node, False))
        stack.append((part & em.cut.side, node, True))

    tree = CapTree(g, lam, cap, left, right, split_edge, leaf_of, keys, cuts if store_cuts else None)
    logger.debug(f"cap tree: {tree.node_count} nodes, {tree.internal_count} internal")
    return tree


def cap_query(t: CapTree, x: int, y: int, delta: int) -> CapAnswer:
    """λ_S after reducing w(x, y) by delta: min(λ_S, c(C(x, y)) - delta)."""
    if not t.covers(x, y):
        raise EdgeNotFoundError(f"({x},{y}) is not covered by this tree")
    t.graph.check_delta(x, y, delta)
    reduced = t.cap_at(x, y) - delta
    return CapAnswer(capacity=min(t.lambda_s, reduced), changed=reduced < t.lambda_s)


def edge_vitality_via_tree(t: CapTree, x: int, y: int, delta: Optional[int] = None) -> bool:
    """True iff reducing w(x, y) by delta lowers λ_S; delta defaults to w(x, y), which decides vitality."""
    if delta is None:
        delta = t.graph.weight(x, y)
    return cap_query(t, x, y, delta).changed
