import logging
from collections import deque
from typing import Optional

from common.errors import InvalidCutError, OracleFormatError, SteinerSetError
from flow.mincut_engine import MinCutEngine
from graph.weighted_graph import Cut, WeightedGraph, contract
from oracle.lca import EulerLCA

logger = logging.getLogger(__name__)


class GomoryHuTree:
    """
    Rooted cut tree: parent[v] and edge_cap[v] for every non-root v (root has parent -1).

    Removing the tree edge (v, parent[v]) leaves the subtree of v, which is a
    minimum cut between v and parent[v] in the source graph with capacity edge_cap[v].
    """

    def __init__(self, graph: WeightedGraph, parent: list[int], edge_cap: list[int], root: int = 0):
        n = graph.n
        if len(parent) != n or len(edge_cap) != n:
            raise OracleFormatError("parent/edge_cap arrays must have one entry per vertex")
        if not 0 <= root < n:
            raise OracleFormatError(f"root {root} outside 0..{n - 1}")
        for v in range(n):
            if v != root and not 0 <= parent[v] < n:
                raise OracleFormatError(f"vertex {v} has parent {parent[v]} outside 0..{n - 1}")
        self.graph = graph
        self.root = root
        self.parent = parent
        self.edge_cap = edge_cap

        self.children: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            if v != root:
                self.children[parent[v]].append(v)

        # Preorder: the subtree of v is order[tin[v]:tout[v]]
        self.order: list[int] = []
        self.tin = [0] * n
        self.tout = [0] * n
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                self.tout[v] = len(self.order)
                continue
            self.tin[v] = len(self.order)
            self.order.append(v)
            stack.append((v, True))
            for c in reversed(self.children[v]):
                stack.append((c, False))
        if len(self.order) != n:
            raise OracleFormatError("Gomory-Hu parent array does not describe a spanning tree")

        self._lca = EulerLCA(self.children, root)
        self._build_lifting()

        if n >= 2:
            best = min((edge_cap[v], v) for v in range(n) if v != root)
            self.global_capacity = best[0]
            self.global_vertex = best[1]
        else:
            self.global_capacity = 0
            self.global_vertex = root

    def _build_lifting(self):
        n = self.graph.n
        levels = max(1, (n - 1).bit_length())
        big = (float("inf"), -1)
        up = [[self.root] * n for _ in range(levels)]
        low = [[big] * n for _ in range(levels)]
        for v in range(n):
            if v != self.root:
                up[0][v] = self.parent[v]
                low[0][v] = (self.edge_cap[v], v)
        for j in range(1, levels):
            prev_up, prev_low = up[j - 1], low[j - 1]
            for v in range(n):
                mid = prev_up[v]
                up[j][v] = prev_up[mid]
                low[j][v] = min(prev_low[v], prev_low[mid])
        self._up = up
        self._low = low

    # ------------------------------------------------------------------

    def depth(self, v: int) -> int:
        return self._lca.depth[v]

    def subtree(self, v: int) -> list[int]:
        return self.order[self.tin[v]:self.tout[v]]

    def in_subtree(self, x: int, v: int) -> bool:
        return self.tin[v] <= self.tin[x] < self.tout[v]

    def _climb_min(self, v: int, steps: int):
        best = (float("inf"), -1)
        j = 0
        while steps:
            if steps & 1:
                best = min(best, self._low[j][v])
                v = self._up[j][v]
            steps >>= 1
            j += 1
        return best

    def path_min(self, u: int, v: int) -> tuple[int, int]:
        """(capacity, lower endpoint) of the lightest tree edge on the u-v path."""
        w = self._lca.lca(u, v)
        a = self._climb_min(u, self.depth(u) - self.depth(w))
        b = self._climb_min(v, self.depth(v) - self.depth(w))
        return min(a, b)

    def side_of_edge(self, child: int, containing: int) -> frozenset:
        """Component of the tree minus (child, parent[child]) that contains `containing`."""
        below = self.subtree(child)
        if self.in_subtree(containing, child):
            return frozenset(below)
        return frozenset(range(self.graph.n)) - frozenset(below)

    @property
    def global_mincut(self) -> Cut:
        side = self.side_of_edge(self.global_vertex, self.global_vertex)
        return Cut(side, self.global_capacity)

    def words(self) -> int:
        """Stored words: parent id and capacity per non-root vertex."""
        return 2 * (self.graph.n - 1)


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------

def build_gh_tree(g: WeightedGraph) -> GomoryHuTree:
    """
    Classic Gomory-Hu construction with contraction.

    Supernodes start as {V}. Each step splits a supernode X by a minimum s-t cut
    computed in the graph where every component of (tree minus X) is contracted
    to one vertex; neighbours of X are reattached to the side their component
    fell on. Every final tree edge is then a genuine minimum cut.
    """
    n = g.n
    members: list[list[int]] = [list(range(n))]
    tree: list[dict[int, int]] = [{}]

    logger.debug(f"Building Gomory-Hu tree for {g}")
    while True:
        x = next((i for i, m in enumerate(members) if len(m) >= 2), None)
        if x is None:
            break
        block = members[x]
        s, t = block[0], block[1]

        # Contract each component hanging off X into a single group
        group_of = [-1] * n
        for idx, v in enumerate(block):
            group_of[v] = idx
        next_group = len(block)
        neighbour_group: dict[int, int] = {}
        for nb in tree[x]:
            neighbour_group[nb] = next_group
            for sn in _component(tree, nb, blocked=x):
                for v in members[sn]:
                    group_of[v] = next_group
            next_group += 1

        contracted = contract(g, group_of, next_group)
        result = MinCutEngine(contracted, memoize=False).min_cut({group_of[s]}, {group_of[t]})
        side_groups = result.side

        keep = [v for v in block if group_of[v] in side_groups]
        moved = [v for v in block if group_of[v] not in side_groups]

        y = len(members)
        members[x] = keep
        members.append(moved)
        tree.append({})

        for nb, cap in list(tree[x].items()):
            if neighbour_group[nb] not in side_groups:
                del tree[x][nb]
                del tree[nb][x]
                tree[y][nb] = cap
                tree[nb][y] = cap
        tree[x][y] = result.capacity
        tree[y][x] = result.capacity
        logger.debug(f"split {s}|{t}: cap={result.capacity}, |keep|={len(keep)}, |moved|={len(moved)}")

    vertex_of = [m[0] for m in members]
    parent = [-1] * n
    edge_cap = [0] * n
    root_node = next(i for i, m in enumerate(members) if m[0] == 0)
    seen = {root_node}
    queue = deque([root_node])
    while queue:
        a = queue.popleft()
        for b, cap in sorted(tree[a].items()):
            if b not in seen:
                seen.add(b)
                parent[vertex_of[b]] = vertex_of[a]
                edge_cap[vertex_of[b]] = cap
                queue.append(b)

    return GomoryHuTree(g, parent, edge_cap, root=0)


def _component(tree: list[dict[int, int]], start: int, blocked: int) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in tree[a]:
            if b != blocked and b not in seen:
                seen.add(b)
                stack.append(b)
    return list(seen)


# ----------------------------------------------------------------------
# Queries
# ----------------------------------------------------------------------

def gh_query(t: GomoryHuTree, u: int, v: int) -> tuple[int, Cut]:
    """Least capacity (u, v) cut: the lightest edge on the tree path, side containing u."""
    if u == v:
        raise InvalidCutError(f"gh_query needs two distinct vertices, got ({u},{u})")
    cap, child = t.path_min(u, v)
    return cap, Cut(t.side_of_edge(child, u), cap)


def global_failure_query(t: GomoryHuTree, u: int, v: int, delta: int) -> tuple[int, Cut]:
    """Global mincut after reducing w(u, v) by delta; requires S = V."""
    g = t.graph
    if len(g.steiner) != g.n:
        raise SteinerSetError("global_failure_query requires S = V")
    g.check_delta(u, v, delta)
    cap, cut = gh_query(t, u, v)
    if cap - delta < t.global_capacity:
        return cap - delta, Cut(cut.side, cap - delta)
    return t.global_capacity, t.global_mincut


# ----------------------------------------------------------------------
# Text form: one line per non-root vertex, `t <v> <parent> <cap>`
# ----------------------------------------------------------------------

def write_gh_tree(t: GomoryHuTree) -> str:
    lines = [f"t {v} {t.parent[v]} {t.edge_cap[v]}" for v in range(t.graph.n) if v != t.root]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_gh_tree(text: str, g: WeightedGraph, root: Optional[int] = None) -> GomoryHuTree:
    parent = [-1] * g.n
    edge_cap = [0] * g.n
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "t":
            raise OracleFormatError(f"line {lineno}: expected 't <v> <parent> <cap>', got {line!r}")
        try:
            v, p, cap = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise OracleFormatError(f"line {lineno}: non-integer field in {line!r}") from None
        if not 0 <= v < g.n:
            raise OracleFormatError(f"line {lineno}: vertex {v} outside 0..{g.n - 1}")
        parent[v] = p
        edge_cap[v] = cap
        seen.add(v)
    roots = [v for v in range(g.n) if v not in seen]
    if len(roots) != 1:
        raise OracleFormatError(f"tree text must leave exactly one root, found {roots}")
    if root is not None and roots[0] != root:
        raise OracleFormatError(f"expected root {root}, found {roots[0]}")
    return GomoryHuTree(g, parent, edge_cap, root=roots[0])

