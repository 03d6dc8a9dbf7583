"""
Rooted tree for a laminar family of vertex sets.

Node 0 is the root and stands for "no member contains this vertex". Every other
node is one family member; a vertex maps to the deepest member containing it,
so the vertices mapped into the subtree of a node are exactly that member.
"""
import logging
from typing import Iterable, Optional

from common.errors import InvalidCutError, LaminarityError, OracleFormatError

logger = logging.getLogger(__name__)

ROOT = 0


class LaminarTree:
    """
    parent[node] gives the tree shape (parent[ROOT] == -1); phi holds only the
    vertices mapped below the root, every other universe vertex sits at the root.
    """

    def __init__(self, universe: Iterable[int], parent: list[int], phi: dict[int, int]):
        self.universe = frozenset(universe)
        if not parent or parent[ROOT] != -1:
            raise OracleFormatError("laminar tree needs a root at node 0")
        self.parent = parent
        self.phi = phi

        self.children: list[list[int]] = [[] for _ in parent]
        for node in range(1, len(parent)):
            p = parent[node]
            if p < 0 or p >= node:
                raise OracleFormatError(f"node {node} has invalid parent {p}")
            self.children[p].append(node)

        self.members: list[list[int]] = [[] for _ in parent]
        for v, node in sorted(phi.items()):
            if v not in self.universe:
                raise OracleFormatError(f"vertex {v} is not in the universe")
            if not 0 < node < len(parent):
                raise OracleFormatError(f"vertex {v} maps to node {node} outside 1..{len(parent) - 1}")
            self.members[node].append(v)

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def node_of(self, x: int) -> int:
        if x not in self.universe:
            raise InvalidCutError(f"vertex {x} is not in the universe of this laminar tree")
        return self.phi.get(x, ROOT)

    def subtree_set(self, x: int) -> Optional[frozenset]:
        """SubTree(x): the smallest member containing x, or None when no member does."""
        node = self.node_of(x)
        if node == ROOT:
            return None
        return frozenset(self._collect(node))

    def node_set(self, node: int) -> frozenset:
        return frozenset(self._collect(node))

    def _collect(self, node: int) -> list[int]:
        out: list[int] = []
        stack = [node]
        while stack:
            a = stack.pop()
            out.extend(self.members[a])
            stack.extend(self.children[a])
        return out

    def family(self) -> list[frozenset]:
        """Every member, recovered from the non-root nodes."""
        return [self.node_set(node) for node in range(1, self.node_count)]

    def words(self) -> int:
        """Node records plus one slot per vertex mapped below the root."""
        return self.node_count + len(self.phi)

    def to_dict(self) -> dict:
        return {
            "parent": self.parent,
            "phi": [[v, node] for v, node in sorted(self.phi.items())],
        }

    @classmethod
    def from_dict(cls, universe: Iterable[int], data: dict) -> "LaminarTree":
        return cls(universe, list(data["parent"]), {int(v): int(node) for v, node in data["phi"]})


def build_laminar_tree(family: Iterable[Iterable[int]], universe: Iterable[int]) -> LaminarTree:
    """
    Inserts members by decreasing size. A member's vertices must all sit on the
    same node at insertion time, otherwise it crosses an earlier member.
    """
    universe = frozenset(universe)

    # 1. Deduplicate and validate
    distinct: set[frozenset] = set()
    for member in family:
        members = frozenset(member)
        if not members:
            raise InvalidCutError("laminar family members must be nonempty")
        outside = members - universe
        if outside:
            raise InvalidCutError(f"vertices {sorted(outside)} are outside the universe")
        distinct.add(members)

    # 2. Largest first; ties broken by sorted contents for a deterministic shape
    ordered = sorted(distinct, key=lambda s: (-len(s), sorted(s)))

    parent = [-1]
    phi: dict[int, int] = {}
    for member in ordered:
        hosts = {phi.get(v, ROOT) for v in member}
        if len(hosts) != 1:
            raise LaminarityError(f"member {sorted(member)} crosses an earlier member")
        host = hosts.pop()
        node = len(parent)
        parent.append(host)
        for v in member:
            phi[v] = node

    logger.debug(f"laminar tree: {len(ordered)} members, {len(parent)} nodes over {len(universe)} vertices")
    return LaminarTree(universe, parent, phi)
