"""
Adversarial graph families behind the oracle lower bounds.

G(M) encodes an integer matrix in the cross edges of two "infinite" cliques,
G(B) does the same for a 0/1 bipartite adjacency, and G_s(H) hangs a new Steiner
vertex off H so that V(H) becomes the only Steiner mincut. Each constructor
returns the graph together with the layout needed to decode it back.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from common.errors import GeneratorError
from graph.weighted_graph import WeightedGraph, scaled
from oracle.cap_oracle import cap_query
from oracle.cut_oracle import FullOracle, cut_query
from steiner.steiner_base import SteinerCutAnalyzer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BipartiteLayout:
    """Row vertices a_i are left[i], column vertices b_j are right[j]."""
    left: tuple[int, ...]
    right: tuple[int, ...]
    infinity: int

    @property
    def n(self) -> int:
        return len(self.left) + len(self.right)


@dataclass(frozen=True)
class GsParams:
    base: WeightedGraph
    lam: int
    alpha: int
    lam_prime: int
    attach: int
    s: int
    scale: int

    @property
    def c_m(self) -> frozenset:
        """C_m = V(H), the only Steiner mincut of G_s(H)."""
        return frozenset(range(self.base.n))


# ----------------------------------------------------------------------
# G(M) and G(B)
# ----------------------------------------------------------------------

def _split_sizes(rows: int, cols: int) -> int:
    n = rows + cols
    if rows < 1 or rows != n // 2 or cols != (n + 1) // 2:
        raise GeneratorError(f"a {rows}x{cols} matrix does not match floor(n/2) x floor((n+1)/2) for any n")
    return n


def _steiner_layout(rows: int, cols: int, steiner_count: Optional[int]) -> list[int]:
    n = rows + cols
    k = n if steiner_count is None else steiner_count
    in_left, in_right = k // 2, (k + 1) // 2
    if k < 2 or in_left > rows or in_right > cols:
        raise GeneratorError(f"cannot place {k} Steiner vertices as {in_left} left / {in_right} right "
                             f"on a {rows}+{cols} layout")
    return list(range(in_left)) + list(range(rows, rows + in_right))


def _clique_graph(weights: list[list[int]], steiner_count: Optional[int]) -> tuple[WeightedGraph, BipartiteLayout]:
    rows, cols = len(weights), len(weights[0]) if weights else 0
    n = _split_sizes(rows, cols)
    steiner = _steiner_layout(rows, cols, steiner_count)

    left = tuple(range(rows))
    right = tuple(range(rows, n))
    finite = sum(sum(row) for row in weights)
    infinity = finite + 1

    edges = []
    for side in (left, right):
        for i, a in enumerate(side):
            for b in side[i + 1:]:
                edges.append((a, b, infinity))
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            edges.append((a, b, weights[i][j]))

    return WeightedGraph(n, edges, steiner), BipartiteLayout(left, right, infinity)


def gen_capacity_lb(matrix: list[list[int]], steiner_count: Optional[int] = None) -> tuple[WeightedGraph, BipartiteLayout]:
    """G(M): cross edge (a_i, b_j) has capacity M[i][j]; L is the only finite Steiner cut."""
    _check_rectangular(matrix)
    for row in matrix:
        for value in row:
            if not isinstance(value, int) or value < 1:
                raise GeneratorError(f"matrix entries must be positive integers, got {value!r}")
    g, layout = _clique_graph(matrix, steiner_count)
    logger.debug(f"G(M): {g}, infinity={layout.infinity}")
    return g, layout


def gen_bipartite_lb(adjacency: list[list[int]], steiner_count: Optional[int] = None) -> tuple[WeightedGraph, BipartiteLayout]:
    """G(B): cross edge (a, b) has capacity 1 if (a, b) is in B and 0 otherwise (kept as an explicit edge)."""
    _check_rectangular(adjacency)
    for row in adjacency:
        for value in row:
            if value not in (0, 1):
                raise GeneratorError(f"bipartite adjacency entries must be 0 or 1, got {value!r}")
    g, layout = _clique_graph(adjacency, steiner_count)
    logger.debug(f"G(B): {g}, |B|={sum(map(sum, adjacency))}")
    return g, layout


def _check_rectangular(rows: list[list[int]]):
    if not rows or not rows[0]:
        raise GeneratorError("matrix must have at least one row and one column")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise GeneratorError(f"row {i} has {len(row)} entries, expected {width}")


def recover_matrix(oracle: FullOracle, layout: BipartiteLayout) -> list[list[int]]:
    """M[i][j] = λ - (capacity after failing (a_i, b_j))."""
    g = oracle.graph
    lam = oracle.lambda_s
    return [[lam - cap_query(oracle.cap_tree, a, b, g.weight(a, b)).capacity for b in layout.right]
            for a in layout.left]


def recover_bipartite(oracle: FullOracle, layout: BipartiteLayout) -> list[list[int]]:
    """B[i][j] = 1 iff failing (a_i, b_j) changes λ_S."""
    g = oracle.graph
    return [[int(cap_query(oracle.cap_tree, a, b, g.weight(a, b)).changed) for b in layout.right]
            for a in layout.left]


# ----------------------------------------------------------------------
# G_s(H)
# ----------------------------------------------------------------------

def gen_reporting_lb(h: WeightedGraph, attach: Optional[int] = None,
                     allow_scaling: bool = True) -> tuple[WeightedGraph, GsParams]:
    """
    Adds vertex s = n and edge (s, attach) of capacity λ' = (λ + α) / 2, with
    α = max c(C(e)) - w(e) over vital edges of H. When λ + α is odd H is doubled
    first, unless allow_scaling is False.
    """
    attach = min(h.steiner) if attach is None else attach
    if attach < 0 or attach >= h.n:
        raise GeneratorError(f"attachment vertex {attach} outside 0..{h.n - 1}")

    # 1. λ and α of H
    analyzer = SteinerCutAnalyzer(h)
    vital = analyzer.vital_edges()
    if not vital:
        raise GeneratorError("H has no vital edge, so α is undefined")
    lam = analyzer.lambda_s
    alpha = max(em.margin for em in vital)

    # 2. Integral λ'
    scale = 1
    if (lam + alpha) % 2:
        if not allow_scaling:
            raise GeneratorError(f"λ + α = {lam + alpha} is odd and scaling is disabled")
        scale = 2
        h = scaled(h, 2)
        lam, alpha = 2 * lam, 2 * alpha
    lam_prime = (lam + alpha) // 2
    if not alpha < lam_prime < lam:
        raise GeneratorError(f"expected α < λ' < λ, got α={alpha}, λ'={lam_prime}, λ={lam}")

    # 3. Attach s
    s = h.n
    edges = h.edges + [(attach, s, lam_prime)]
    gs = WeightedGraph(h.n + 1, edges, h.steiner | {s})

    # 4. V(H) must now be the Steiner mincut
    got = SteinerCutAnalyzer(gs).lambda_s
    if got != lam_prime:
        raise GeneratorError(f"G_s(H) has Steiner mincut {got}, expected λ'={lam_prime}")

    logger.debug(f"G_s(H): λ={lam}, α={alpha}, λ'={lam_prime}, attach={attach}, scale={scale}")
    return gs, GsParams(base=h, lam=lam, alpha=alpha, lam_prime=lam_prime, attach=attach, s=s, scale=scale)


def reporting_detects_change(oracle: FullOracle, params: GsParams, x: int, y: int) -> bool:
    """True iff the cut reported after failing (x, y) in G_s(H) is not C_m."""
    answer = cut_query(oracle, x, y, oracle.graph.weight(x, y))
    side = answer.side
    c_m = params.c_m
    return side != c_m and side != frozenset(range(oracle.graph.n)) - c_m


# ----------------------------------------------------------------------
# Readers for the CLI
# ----------------------------------------------------------------------

def read_matrix(text: str) -> list[list[int]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise GeneratorError(f"line {lineno}: matrix rows must be whitespace-separated integers") from None
    _check_rectangular(rows)
    return rows


def read_bipartite(text: str) -> list[list[int]]:
    return read_matrix(text)
