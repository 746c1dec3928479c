"""Hypothesis strategies for random graphs"""

from hypothesis import strategies as st

from egobw.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 24) -> Graph:
    """
    Simple graphs on vertices 0..n-1, drawn as a subset of all vertex pairs.
    """
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(chosen, vertices=range(n))


@st.composite
def shuffled_ids(draw, max_n: int = 16) -> tuple[list[tuple[int, int]], list[int]]:
    """
    An edge list over arbitrary non-negative ids together with a permutation
    of its line order.
    """
    ids = draw(
        st.lists(
            st.integers(min_value=0, max_value=10**12),
            min_size=2,
            max_size=max_n,
            unique=True,
        )
    )
    pairs = [(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    order = draw(st.permutations(range(len(edges))))
    return edges, list(order)
