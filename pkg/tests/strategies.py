"""Hypothesis strategies shared by the suite."""

import random

from hypothesis import strategies as st

from propchordal.graph import Graph, connected_components, is_connected
from propchordal.oracle import random_tree_layout_pair


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])
    if connected and not is_connected(g):
        # chain the components together through their smallest vertices
        comps = connected_components(g)
        extra = [(min(a), min(b)) for a, b in zip(comps, comps[1:])]
        g = Graph.from_edges(n, g.edges() + extra)
    return g


@st.composite
def graph_with_layout(draw, max_n=7, connected=False):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_n))
    p = draw(st.sampled_from([0.3, 0.5, 0.7, 0.9]))
    rng = random.Random(seed)
    g, t = random_tree_layout_pair(rng, n, p)
    while connected and not is_connected(g):
        g, t = random_tree_layout_pair(rng, n, p)
    return g, t
