import logging
import math
from typing import Optional

import numpy as np

from common.errors import GeneratorError
from graph.weighted_graph import WeightedGraph

logger = logging.getLogger(__name__)

STEINER_RULES = ("n", "2", "half", "n-sqrt")


def steiner_size(n: int, rule: str) -> int:
    """|S| for a bench family rule: all vertices, two, half, or n - ceil(sqrt(n)) + 1."""
    if rule == "n":
        return n
    if rule == "2":
        return 2
    if rule == "half":
        return max(2, math.ceil(n / 2))
    if rule == "n-sqrt":
        return max(2, n - math.ceil(math.sqrt(n)) + 1)
    raise GeneratorError(f"unknown Steiner rule {rule!r}, expected one of {', '.join(STEINER_RULES)}")


def _random_graph(n: int, density: float, weights: tuple[int, int], steiner_count: int,
                  rng: np.random.Generator) -> WeightedGraph:
    lo, hi = weights
    if n < 2:
        raise GeneratorError(f"random graphs need n >= 2, got {n}")
    if not 0.0 <= density <= 1.0:
        raise GeneratorError(f"density must lie in [0, 1], got {density}")
    if lo < 0 or lo > hi:
        raise GeneratorError(f"invalid weight range {lo}-{hi}")
    if not 2 <= steiner_count <= n:
        raise GeneratorError(f"|S|={steiner_count} must lie in [2, {n}]")

    # 1. Random spanning tree keeps the graph connected
    order = rng.permutation(n)
    present: set[tuple[int, int]] = set()
    for i in range(1, n):
        a, b = int(order[i]), int(order[rng.integers(0, i)])
        present.add((min(a, b), max(a, b)))

    # 2. Every other pair joins with probability `density`
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in present and rng.random() < density:
                present.add((u, v))

    edges = [(u, v, int(rng.integers(lo, hi + 1))) for u, v in sorted(present)]
    steiner = sorted(int(s) for s in rng.choice(n, size=steiner_count, replace=False))
    return WeightedGraph(n, edges, steiner)


def gen_random(n: int, density: float, weight_range: tuple[int, int], steiner_fraction: float,
               seed: int, steiner_count: Optional[int] = None) -> WeightedGraph:
    """
    Seeded connected graph: a random spanning tree plus each remaining pair with
    probability `density`. |S| = max(2, round(steiner_fraction * n)) unless given.
    """
    if steiner_count is None:
        if not 0.0 < steiner_fraction <= 1.0:
            raise GeneratorError(f"steiner_fraction must lie in (0, 1], got {steiner_fraction}")
        steiner_count = min(n, max(2, round(steiner_fraction * n)))
    g = _random_graph(n, density, weight_range, steiner_count, np.random.default_rng(seed))
    logger.debug(f"gen_random(n={n}, density={density}, seed={seed}) -> {g}")
    return g


def gen_family_instance(n: int, steiner_rule: str, density: float, weights: tuple[int, int],
                        seed: int) -> WeightedGraph:
    return gen_random(n, density, weights, 1.0, seed, steiner_count=steiner_size(n, steiner_rule))


def random_matrix(n: int, seed: int, exponent: int = 2) -> list[list[int]]:
    """floor(n/2) x floor((n+1)/2) matrix with entries in [1, n^exponent]."""
    if n < 2:
        raise GeneratorError(f"matrix instances need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    values = rng.integers(1, n ** exponent + 1, size=(n // 2, (n + 1) // 2))
    return values.astype(int).tolist()


def random_bipartite(n: int, density: float, seed: int) -> list[list[int]]:
    if n < 2:
        raise GeneratorError(f"bipartite instances need n >= 2, got {n}")
    if not 0.0 <= density <= 1.0:
        raise GeneratorError(f"density must lie in [0, 1], got {density}")
    rng = np.random.default_rng(seed)
    values = rng.random(size=(n // 2, (n + 1) // 2)) < density
    return values.astype(int).tolist()


def parse_weight_range(text: str) -> tuple[int, int]:
    """'1-10' -> (1, 10); a single number means a fixed weight."""
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return int(lo), int(hi)
        value = int(text)
        return value, value
    except ValueError:
        raise GeneratorError(f"weight range must look like LO-HI, got {text!r}") from None
