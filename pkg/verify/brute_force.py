"""
Exhaustive ground truth by cut enumeration.

Every bipartition is a bitmask with vertex 0 fixed on the inside, so 2^(n-1)
sides cover all cuts once. Capacities are computed for all masks at once with
numpy; nothing here calls the max-flow engine.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from common.errors import BruteForceLimitError
from common.naming import edge_key
from config.settings import get_settings
from graph.weighted_graph import WeightedGraph

logger = logging.getLogger(__name__)


@dataclass
class BruteForceAnswer:
    graph: WeightedGraph
    masks: np.ndarray
    capacities: np.ndarray
    lambda_s: int
    edge_capacity: dict[tuple[int, int], int] = field(default_factory=dict)
    vital: dict[tuple[int, int], bool] = field(default_factory=dict)

    def side_of(self, mask: int) -> frozenset:
        return frozenset(v for v in range(self.graph.n) if (mask >> v) & 1)

    @property
    def mincuts(self) -> list[frozenset]:
        """All Steiner mincut sides (the side holding vertex 0)."""
        hits = self.masks[self.capacities == self.lambda_s]
        return [self.side_of(int(mask)) for mask in hits]

    def crossing(self, x: int, y: int) -> np.ndarray:
        return ((self.masks >> x) ^ (self.masks >> y)) & 1


def _steiner_masks(g: WeightedGraph, limit: Optional[int]) -> np.ndarray:
    limit = get_settings().brute_force_limit if limit is None else limit
    if g.n > limit:
        raise BruteForceLimitError(f"brute force enumeration refused for n={g.n} > {limit}")

    n = g.n
    masks = (np.arange(1 << (n - 1), dtype=np.int64) << 1) | 1
    full = (1 << n) - 1
    masks = masks[masks != full]

    steiner_mask = 0
    for s in g.steiner:
        steiner_mask |= 1 << s
    inside = masks & steiner_mask
    keep = (inside != 0) & (inside != steiner_mask)
    return masks[keep]


def _capacities(g: WeightedGraph, masks: np.ndarray) -> np.ndarray:
    caps = np.zeros(len(masks), dtype=np.int64)
    for u, v, w in g.edges:
        caps += w * (((masks >> u) ^ (masks >> v)) & 1)
    return caps


def brute_steiner_mincut(g: WeightedGraph, limit: Optional[int] = None) -> BruteForceAnswer:
    """λ_S, all Steiner mincuts, c(C(e)) and vitality for every edge, by enumeration."""
    masks = _steiner_masks(g, limit)
    caps = _capacities(g, masks)
    lam = int(caps.min())
    answer = BruteForceAnswer(graph=g, masks=masks, capacities=caps, lambda_s=lam)

    for u, v, w in g.edges:
        crossing = answer.crossing(u, v).astype(bool)
        best = int(caps[crossing].min())
        answer.edge_capacity[(u, v)] = best
        answer.vital[(u, v)] = best - w < lam

    logger.debug(f"brute force over {len(masks)} Steiner cuts: λ_S={lam}")
    return answer


def brute_cap_after(g: WeightedGraph, x: int, y: int, delta: int, limit: Optional[int] = None,
                    answer: Optional[BruteForceAnswer] = None) -> int:
    """λ_S of g with w(x, y) reduced by delta."""
    w = g.check_delta(x, y, delta)
    if answer is None:
        masks = _steiner_masks(g, limit)
        caps = _capacities(g, masks)
    else:
        masks, caps = answer.masks, answer.capacities
    crossing = ((masks >> x) ^ (masks >> y)) & 1
    logger.debug(f"brute_cap_after ({x},{y}) w={w} delta={delta}")
    return int((caps - delta * crossing).min())


def brute_mincuts_after(answer: BruteForceAnswer, x: int, y: int, delta: int) -> tuple[int, list[frozenset]]:
    """λ_S after the reduction and every Steiner mincut of the modified graph."""
    answer.graph.check_delta(x, y, delta)
    caps = answer.capacities - delta * answer.crossing(x, y)
    lam = int(caps.min())
    return lam, [answer.side_of(int(m)) for m in answer.masks[caps == lam]]


def all_mincuts_for_edge(answer: BruteForceAnswer, x: int, y: int) -> list[frozenset]:
    """Every mincut for (x, y), each oriented to contain x."""
    key = edge_key(x, y)
    target = answer.edge_capacity[key]
    crossing = answer.crossing(x, y).astype(bool)
    hits = answer.masks[crossing & (answer.capacities == target)]
    n = answer.graph.n
    out = []
    for mask in hits:
        side = answer.side_of(int(mask))
        out.append(side if x in side else frozenset(range(n)) - side)
    return out
