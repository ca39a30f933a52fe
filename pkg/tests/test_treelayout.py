import itertools
import json

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from propchordal.graph import Graph, clique, cycle, generate, is_chordal, k_fan, k_sun, path
from propchordal.oracle import all_tree_layouts, indifference_tree_layouts
from propchordal.patterns import builtin_pattern_set, layout_occurrences, treelayout_occurrences
from propchordal.treelayout import (
    INDIFFERENCE_METHODS,
    TreeIntersectionModel,
    TreeLayout,
    flatten_dfs,
    is_indifference,
    is_tree_layout,
    model_from_treelayout,
    treelayout_from_model,
)

from strategies import graph_with_layout, graphs


def free_of(g, t, name):
    return all(not treelayout_occurrences(g, t, p) for p in builtin_pattern_set(name))


def named_layout(g, parents):
    return TreeLayout(tuple(None if parents[g.name(v)] is None else g.vertex(parents[g.name(v)]) for v in range(g.n)))


def test_structure_validation():
    with pytest.raises(ValueError):
        TreeLayout((None, None))
    with pytest.raises(ValueError):
        TreeLayout((1, 0))
    t = TreeLayout((None, 0, 0, 1))
    assert t.root == 0 and t.children[0] == (1, 2)
    assert t.ancestors(3) == {0, 1} and t.descendants(1) == {3}
    assert t.comparable(3, 0) and not t.comparable(2, 3)


def test_json_roundtrip_with_relabelled_nodes():
    t = TreeLayout((None, 0, 0, 1))
    assert TreeLayout.from_json(t.to_json()) == t
    # node k carries vertex vertex_of[k]
    text = json.dumps({"root": 0, "parent": [None, 0, 1], "vertex_of": [2, 0, 1]})
    assert TreeLayout.from_json(text).parent == (2, 0, None)


@given(st.permutations(range(6)))
def test_any_order_is_a_tree_layout(order):
    g = generate("cevenol").induced(range(6))
    assert is_tree_layout(g, TreeLayout.path(order))


def test_star_layout_of_c4_is_not_a_tree_layout():
    assert not is_tree_layout(cycle(4), TreeLayout((None, 0, 0, 0)))


def test_several_layouts_rooted_at_1():
    g = generate("several_layouts")
    layouts = indifference_tree_layouts(g, g.vertex("1"))
    assert len(layouts) == 4
    # the two known layouts swap b and d on the trunk below a
    known = [
        {"1": None, "a": "1", "b": "a", "d": "b", "c": "d", "2": "d", "3": "c"},
        {"1": None, "a": "1", "d": "a", "b": "d", "c": "b", "2": "b", "3": "c"},
    ]
    for parents in known:
        t = named_layout(g, parents)
        assert is_tree_layout(g, t) and t in layouts


@given(st.integers(1, 6), st.data())
def test_clique_paths_are_indifference(n, data):
    order = data.draw(st.permutations(range(n)))
    t = TreeLayout.path(order)
    assert all(is_indifference(clique(n), t, m) for m in INDIFFERENCE_METHODS)


def test_cevenol_known_layout():
    g = generate("cevenol")
    t = named_layout(g, {"h": None, "g": "h", "d": "g", "a": "d", "c": "a", "b": "c", "e": "a", "f": "e"})
    assert is_tree_layout(g, t)
    assert all(is_indifference(g, t, m) for m in INDIFFERENCE_METHODS)


def test_four_fan_unique_indifference_layout():
    g = k_fan(4)
    good = [t for t in all_tree_layouts(g) if is_indifference(g, t)]
    assert len(good) == 1
    (t,) = good
    expected = named_layout(g, {"v3": None, "v": "v3", "v2": "v", "v1": "v2", "v4": "v", "v5": "v4"})
    assert t == expected


def test_unknown_method():
    with pytest.raises(ValueError):
        is_indifference(path(2), TreeLayout.path([0, 1]), "magic")


@given(graph_with_layout(max_n=8, connected=True))
def test_four_methods_agree_on_connected_graphs(gt):
    g, t = gt
    assert len({is_indifference(g, t, m) for m in INDIFFERENCE_METHODS}) == 1


@given(graph_with_layout(max_n=8))
def test_structural_methods_match_indifference_triples(gt):
    # without connectivity the two proper patterns miss the triple <~12,13,~23>
    g, t = gt
    expected = free_of(g, t, "indifference")
    for m in ("closed_nbhd", "cliques", "nested"):
        assert is_indifference(g, t, m) == expected


def sun_model():
    # host star: centre 0, leaves 1..3
    return TreeIntersectionModel(
        4,
        ((0, 1), (0, 2), (0, 3)),
        tuple(map(frozenset, ({0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {2}, {3}, {1}))),
    )


def test_model_of_three_sun():
    m = sun_model()
    g = m.intersection_graph()
    assert g == k_sun(3)
    t = treelayout_from_model(m)
    assert is_tree_layout(g, t) and free_of(g, t, "int")
    assert not free_of(g, t, "proper")
    assert model_from_treelayout(g, t).intersection_graph() == g
    order = flatten_dfs(g, t)
    (p,) = builtin_pattern_set("chordal")
    assert layout_occurrences(g, order, p) == []


def test_model_edge_cases():
    single = TreeIntersectionModel(1, (), (frozenset({0}),))
    assert treelayout_from_model(single) == TreeLayout((None,))
    n = 5
    intervals = TreeIntersectionModel(n + 1, tuple((i, i + 1) for i in range(n)), tuple(frozenset({i, i + 1}) for i in range(n)))
    g = intervals.intersection_graph()
    assert g == path(n)
    t = treelayout_from_model(intervals)
    assert sorted(len(c) for c in t.children) == [0] + [1] * (n - 1)
    assert free_of(g, t, "int")
    with pytest.raises(ValueError):
        TreeIntersectionModel(2, ((0, 1),), (frozenset(),))
    with pytest.raises(ValueError):
        TreeIntersectionModel(3, ((0, 1), (1, 2)), (frozenset({0, 2}),))


def test_clique_path_model():
    g = clique(4)
    m = model_from_treelayout(g, TreeLayout.path([2, 0, 3, 1]))
    assert m.intersection_graph() == g


@given(graph_with_layout(max_n=8))
def test_model_roundtrip_when_interval_free(gt):
    g, t = gt
    if free_of(g, t, "int"):
        assert model_from_treelayout(g, t).intersection_graph() == g
    else:
        with pytest.raises(ValueError):
            model_from_treelayout(g, t)


def simplicial_order(g, order):
    # each vertex's earlier neighbours must be pairwise adjacent
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        early = [u for u in g.adj[v] if pos[u] < pos[v]]
        if any(b not in g.adj[a] for a, b in itertools.combinations(early, 2)):
            return False
    return True


@given(graph_with_layout(max_n=8))
def test_flatten_dfs(gt):
    g, t = gt
    if free_of(g, t, "chordal"):
        order = flatten_dfs(g, t)
        assert sorted(order) == list(range(g.n))
        assert simplicial_order(g, order)
        assert is_chordal(g)
    else:
        with pytest.raises(ValueError):
            flatten_dfs(g, t)


@given(st.permutations(range(6)))
def test_flatten_path_is_identity(order):
    g = path(6)
    t = TreeLayout.path(order)
    if free_of(g, t, "chordal"):
        assert flatten_dfs(g, t) == list(order)


@given(graphs(max_n=6, connected=True))
def test_children_adjacent_to_parent_in_indifference_layouts(g):
    for t in indifference_tree_layouts(g):
        assert all(p is None or p in g.adj[v] for v, p in enumerate(t.parent))


def test_interval_free_layout_iff_chordal_small():
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > 5:
            break
        g = Graph.from_edges(h.number_of_nodes(), h.edges())
        found = any(free_of(g, t, "int") for t in all_tree_layouts(g))
        assert found == is_chordal(g)
