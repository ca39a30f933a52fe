import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from propchordal.blocks import (
    BlockTree,
    block_tree,
    nested_collection_of_block,
    s_block,
    s_maximal_vertices,
)
from propchordal.graph import Graph, clique, connected_components, cycle, generate, k_fan, k_sun, path
from propchordal.treelayout import TreeLayout, is_tree_layout

from strategies import graphs


def names(g, vs):
    return "".join(sorted(g.name(v) for v in vs))


def test_s_maximal_examples():
    assert s_maximal_vertices(path(3), {0}, {1, 2}) == {1}
    assert s_maximal_vertices(clique(4), {0}, {1, 2, 3}) == {1, 2, 3}
    assert s_maximal_vertices(cycle(4), {0}, {1, 2, 3}) == {1, 3}
    with pytest.raises(ValueError):
        s_maximal_vertices(path(3), {0}, {1})


def test_s_block_examples():
    assert s_block(path(3), {0}, {1, 2}) == {1}
    assert s_block(clique(5), {0}, {1, 2, 3, 4}) == {1, 2, 3, 4}
    sun = k_sun(3)
    (rest,) = connected_components(sun, {0})
    # no vertex outside x1 sees both x2 and x3's private neighbours
    assert s_block(sun, {0}, rest) is None


def test_block_tree_examples():
    bt = block_tree(path(3), 0)
    assert bt.blocks == (frozenset({0}), frozenset({1}), frozenset({2}))
    assert bt.parent == (None, 0, 1)
    g = generate("several_layouts")
    bt = block_tree(g, g.vertex("1"))
    assert [names(g, b) for b in bt.blocks] == ["1", "a", "bcd", "2", "3"]
    assert bt.parent == (None, 0, 1, 2, 2)
    fan = k_fan(5)
    assert all(block_tree(fan, x) is None for x in range(fan.n))
    with pytest.raises(ValueError):
        block_tree(Graph.from_edges(2, []), 0)


def test_block_tree_json():
    g = generate("nested_traces")
    bt = block_tree(g, 0)
    assert BlockTree.from_json(bt.to_json()) == bt


def test_nested_collection_examples():
    bt = block_tree(path(3), 0)
    c = nested_collection_of_block(path(3), bt, 1)
    assert c.ground == {1} and c.families == ((frozenset({1}),),)
    assert nested_collection_of_block(path(3), bt, 2).families == ()
    g = generate("nested_traces")
    bt = block_tree(g, 0)
    b = next(i for i, blk in enumerate(bt.blocks) if g.vertex("a") in blk)
    c = nested_collection_of_block(g, bt, b)
    assert names(g, c.ground) == "abcde"
    assert {names(g, s) for s in c.sets} == {"abcde", "bcde", "bc", "cd", "de"}



@given(graphs(max_n=8, connected=True))
def test_block_tree_invariants(g):
    for x in range(g.n):
        bt = block_tree(g, x)
        if bt is None:
            continue
        assert sorted(v for b in bt.blocks for v in b) == list(range(g.n))
        for b in bt.blocks:
            assert all(v in g.adj[u] for u, v in itertools.combinations(b, 2))
        other = block_tree(g, x, reverse_components=True)
        assert set(other.blocks) == set(bt.blocks)


def extension(bt: BlockTree, orders):
    """Blocks as paths, each child block hung under the last vertex of its parent."""
    parent = {}
    for i, blk in enumerate(bt.blocks):
        order = orders[i]
        top = None if bt.parent[i] is None else orders[bt.parent[i]][-1]
        parent[order[0]] = top
        for a, b in zip(order, order[1:]):
            parent[b] = a
    return TreeLayout(tuple(parent[v] for v in range(len(parent))))


@given(graphs(max_n=8, connected=True), st.randoms(use_true_random=False))
def test_extensions_are_tree_layouts(g, rnd):
    for x in range(g.n):
        bt = block_tree(g, x)
        if bt is None:
            continue
        orders = [rnd.sample(sorted(b), len(b)) for b in bt.blocks]
        assert is_tree_layout(g, extension(bt, orders))


@given(graphs(max_n=7, connected=True), st.data())
def test_shape_is_invariant_under_relabelling(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    h = g.relabel(perm)
    for x in range(g.n):
        a, b = block_tree(g, x), block_tree(h, perm[x])
        assert (a is None) == (b is None)
        if a is not None:
            shape = lambda bt: sorted((bt.depth(i), len(blk)) for i, blk in enumerate(bt.blocks))
            assert shape(a) == shape(b)
            assert {frozenset(perm[v] for v in blk) for blk in a.blocks} == set(b.blocks)
