"""Small named graphs shared by the test modules, plus a hypothesis graph strategy."""
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graph.weighted_graph import WeightedGraph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def path_graph() -> WeightedGraph:
    """a-b-c with w(a,b)=3, w(b,c)=1 and S={a,c}; a=0, b=1, c=2."""
    return WeightedGraph(3, [(0, 1, 3), (1, 2, 1)], [0, 2])


def k3(steiner=(0, 1, 2)) -> WeightedGraph:
    return WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], steiner)


def triangles_and_bridge() -> WeightedGraph:
    """Unit triangles {0,1,2} and {3,4,5} joined by the bridge (2,3); S = V."""
    edges = [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1), (2, 3, 1)]
    return WeightedGraph(6, edges, range(6))


def four_path_unit() -> WeightedGraph:
    """s1-u-v-s2 with unit weights; s1=0, u=1, v=2, s2=3."""
    return WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], [0, 3])


def nonvital_type3() -> WeightedGraph:
    """(0,2) is a Type-3 edge whose failure leaves λ_S=1 untouched."""
    return WeightedGraph(4, [(0, 1, 10), (0, 2, 1), (1, 2, 10), (1, 3, 1)], [0, 1, 3])


@st.composite
def small_graphs(draw, min_n: int = 2, max_n: int = 7, max_weight: int = 5) -> WeightedGraph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1, max_size=len(pairs)))
    edges = [(u, v, draw(st.integers(min_value=0, max_value=max_weight))) for u, v in chosen]
    steiner = draw(st.lists(st.integers(min_value=0, max_value=n - 1), unique=True, min_size=2, max_size=n))
    return WeightedGraph(n, edges, steiner)
