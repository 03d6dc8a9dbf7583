import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

from common.errors import SteinerSentryError, UniquenessViolation
from common.naming import format_cut
from graph.weighted_graph import Cut, EdgeKind, WeightedGraph, classify_edge
from oracle.cap_oracle import CapTree, build_cap_tree, cap_query
from oracle.gomory_hu import GomoryHuTree, build_gh_tree, gh_query
from oracle.laminar import LaminarTree, build_laminar_tree
from steiner.steiner_base import SteinerCutAnalyzer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutAnswer:
    """
    A Steiner mincut of the modified graph.

    capacity is measured after the reduction; source names the component that
    produced the side (baseline, type1, type2, type3 or quadratic); anchor is the
    vertex the canonical text orientation keeps.
    """
    side: frozenset
    capacity: int
    changed: bool
    edge_type: EdgeKind
    source: str
    anchor: int = 0

    def to_cut(self) -> Cut:
        return Cut(self.side, self.capacity)

    def to_text(self, n: int) -> str:
        return format_cut(self.side, self.capacity, n, self.anchor)


class SpaceReport(NamedTuple):
    words_type1: int
    words_gh: int
    words_type3: int
    words_captree: int

    @property
    def total(self) -> int:
        return self.words_type1 + self.words_gh + self.words_type3 + self.words_captree


class Type3Forest:
    """One laminar tree L(u) per nonSteiner endpoint u of a Type-3 edge."""

    def __init__(self, trees: dict[int, LaminarTree]):
        self.trees = trees

    def tree_for(self, u: int) -> LaminarTree:
        try:
            return self.trees[u]
        except KeyError:
            raise SteinerSentryError(f"vertex {u} has no Type-3 forest entry", code="missing_forest") from None

    def words(self) -> int:
        return sum(t.words() for t in self.trees.values())


def build_type3_forest(g: WeightedGraph, analyzer: SteinerCutAnalyzer) -> Type3Forest:
    # 1. Group vital Type-3 edges by their nonSteiner endpoint
    by_vertex: dict[int, list[int]] = {}
    for u, v, _ in g.edges:
        etype = classify_edge(g, u, v)
        if etype.kind is not EdgeKind.TYPE3:
            continue
        x, w = etype.steiner_end, etype.nonsteiner_end
        by_vertex.setdefault(w, [])
        if analyzer.is_vital(x, w):
            by_vertex[w].append(x)

    # 2. Nearest mincuts form a laminar family per nonSteiner vertex
    trees: dict[int, LaminarTree] = {}
    for w in sorted(by_vertex):
        nearest = {x: analyzer.nearest_mincut(x, w).cut.side for x in by_vertex[w]}
        tree = build_laminar_tree(nearest.values(), g.vertices)

        # 3. SubTree(x) must give back N((x, w)) exactly
        for x, side in nearest.items():
            if tree.subtree_set(x) != side:
                raise UniquenessViolation(
                    f"SubTree({x}) in L({w}) is {sorted(tree.subtree_set(x) or [])}, expected {sorted(side)}")
        trees[w] = tree
    return Type3Forest(trees)


class FullOracle:
    """
    Cut-reporting sensitivity oracle: cap tree over E, Type-1 tree with cuts over E1,
    Gomory-Hu tree for Type-2 edges and the Type-3 laminar forest.
    """

    def __init__(self, graph: WeightedGraph, lambda_s: int, baseline_mincut: Cut, cap_tree: CapTree,
                 type1: Optional[CapTree], gh: GomoryHuTree, type3: Type3Forest):
        self.graph = graph
        self.lambda_s = lambda_s
        self.baseline_mincut = baseline_mincut
        self.cap_tree = cap_tree
        self.type1 = type1
        self.gh = gh
        self.type3 = type3

    def cap_query(self, x: int, y: int, delta: int):
        return cap_query(self.cap_tree, x, y, delta)

    def cut_query(self, x: int, y: int, delta: int) -> CutAnswer:
        return cut_query(self, x, y, delta)


def build_full_oracle(g: WeightedGraph, analyzer: Optional[SteinerCutAnalyzer] = None) -> FullOracle:
    analyzer = analyzer or SteinerCutAnalyzer(g)
    logger.info(f"🏗️ Building sensitivity oracle for {g}")

    # 1. Gomory-Hu tree: answers Type-2 edges and bounds every later flow
    gh = build_gh_tree(g)
    analyzer.attach_gh_tree(gh)

    # 2. λ_S and a stored Steiner mincut
    lam, mincut = analyzer.steiner_mincut()

    # 3. Cap tree over every edge
    cap_tree = build_cap_tree(g, analyzer=analyzer)

    # 4. Type-1 tree, augmented with cuts
    type1_edges = [(u, v) for u, v, _ in g.edges if classify_edge(g, u, v).kind is EdgeKind.TYPE1]
    type1 = build_cap_tree(g, type1_edges, analyzer=analyzer, store_cuts=True) if type1_edges else None

    # 5. Laminar forest for vital Type-3 edges
    type3 = build_type3_forest(g, analyzer)

    oracle = FullOracle(g, lam, mincut, cap_tree, type1, gh, type3)
    logger.info(f"✅ Oracle ready: λ_S={lam}, words={space_report(oracle).total}, "
                f"flows={analyzer.engine.flow_count}")
    return oracle


def cut_query(o: FullOracle, x: int, y: int, delta: int) -> CutAnswer:
    """
    Steiner mincut after reducing w(x, y) by delta.

    Unchanged capacity returns the stored mincut; otherwise the edge type picks
    the component holding a mincut for (x, y).
    """
    answer = cap_query(o.cap_tree, x, y, delta)
    etype = classify_edge(o.graph, x, y)
    if not answer.changed:
        return CutAnswer(o.baseline_mincut.side, answer.capacity, False, etype.kind, "baseline")

    if etype.kind is EdgeKind.TYPE1:
        side = o.type1.cut_at(x, y)
        return CutAnswer(side, answer.capacity, True, etype.kind, "type1")

    if etype.kind is EdgeKind.TYPE2:
        _, cut = gh_query(o.gh, x, y)
        return CutAnswer(cut.side, answer.capacity, True, etype.kind, "type2")

    s, u = etype.steiner_end, etype.nonsteiner_end
    side = o.type3.tree_for(u).subtree_set(s)
    if side is None:
        raise SteinerSentryError(f"vital edge ({s},{u}) has no nearest mincut in L({u})", code="missing_forest")
    return CutAnswer(side, answer.capacity, True, etype.kind, "type3", anchor=s)


def space_report(o: FullOracle) -> SpaceReport:
    return SpaceReport(
        words_type1=o.type1.words() if o.type1 is not None else 0,
        words_gh=o.gh.words(),
        words_type3=o.type3.words(),
        words_captree=o.cap_tree.words(),
    )


# ----------------------------------------------------------------------
# Quadratic reference: cap tree over E with a cut at every internal node
# ----------------------------------------------------------------------

class BaselineQuadraticOracle:
    def __init__(self, graph: WeightedGraph, lambda_s: int, baseline_mincut: Cut, tree: CapTree):
        self.graph = graph
        self.lambda_s = lambda_s
        self.baseline_mincut = baseline_mincut
        self.tree = tree


def build_baseline_oracle(g: WeightedGraph, analyzer: Optional[SteinerCutAnalyzer] = None) -> BaselineQuadraticOracle:
    analyzer = analyzer or SteinerCutAnalyzer(g)
    lam, mincut = analyzer.steiner_mincut()
    tree = build_cap_tree(g, analyzer=analyzer, store_cuts=True)
    return BaselineQuadraticOracle(g, lam, mincut, tree)


def baseline_cut_query(o: BaselineQuadraticOracle, x: int, y: int, delta: int) -> CutAnswer:
    answer = cap_query(o.tree, x, y, delta)
    kind = classify_edge(o.graph, x, y).kind
    if not answer.changed:
        return CutAnswer(o.baseline_mincut.side, answer.capacity, False, kind, "baseline")
    return CutAnswer(o.tree.cut_at(x, y), answer.capacity, True, kind, "quadratic")


def baseline_space(o: BaselineQuadraticOracle) -> int:
    return o.tree.words()


def canonical_answer_text(answer: CutAnswer, n: int) -> list[str]:
    """The two lines the CLI prints for a cut query."""
    head = f"{answer.capacity} {'changed' if answer.changed else 'unchanged'}"
    return [head, answer.to_text(n)]
