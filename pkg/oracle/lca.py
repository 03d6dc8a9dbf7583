"""Static constant-time LCA via Euler tour + sparse table.

Pre-processing is O(k log k) for a tree on k nodes; each query is two table
lookups. Trees here are given as child lists over node ids 0..k-1.
"""
import numpy as np


class EulerLCA:
    """Builds the Euler tour and a sparse table of minimum-depth positions."""

    __slots__ = ("first_occ", "euler", "depths", "st", "log", "depth")

    def __init__(self, children: list[list[int]], root: int):
        k = len(children)
        self.depth = [0] * k
        self.first_occ = [-1] * k
        euler: list[int] = []
        depths: list[int] = []

        # Iterative DFS; the node is re-emitted after each child returns
        stack = [(root, 0)]
        while stack:
            node, idx = stack.pop()
            if idx == 0:
                self.first_occ[node] = len(euler)
            euler.append(node)
            depths.append(self.depth[node])
            if idx < len(children[node]):
                child = children[node][idx]
                self.depth[child] = self.depth[node] + 1
                stack.append((node, idx + 1))
                stack.append((child, 0))

        self.euler = np.asarray(euler, dtype=np.int64)
        self.depths = np.asarray(depths, dtype=np.int64)

        m = len(euler)
        k_max = max(1, int(m).bit_length())
        self.log = np.zeros(m + 1, dtype=np.int64)
        if m > 1:
            self.log[2:] = np.floor(np.log2(np.arange(2, m + 1))).astype(np.int64)

        st = np.empty((k_max, m), dtype=np.int64)
        st[0] = np.arange(m)
        for j in range(1, k_max):
            half = 1 << (j - 1)
            span = 1 << j
            if span > m:
                st = st[:j]
                break
            left = st[j - 1, : m - span + 1]
            right = st[j - 1, half: half + m - span + 1]
            pick_left = self.depths[left] <= self.depths[right]
            st[j, : m - span + 1] = np.where(pick_left, left, right)
        self.st = st

    def lca(self, u: int, v: int) -> int:
        left, right = self.first_occ[u], self.first_occ[v]
        if left > right:
            left, right = right, left
        j = int(self.log[right - left + 1])
        a = self.st[j, left]
        b = self.st[j, right - (1 << j) + 1]
        return int(self.euler[a] if self.depths[a] <= self.depths[b] else self.euler[b])
