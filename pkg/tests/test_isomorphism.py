import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from propchordal.fpq import parse_sexpr
from propchordal.graph import Graph, generate, k_sun, path, random_connected
from propchordal.hierarchy import FPQHierarchy, SkeletonEdge, choice_space, decorate, enumerate_realizations, reorder
from propchordal.isomorphism import (
    CodeError,
    IsoCode,
    code_of,
    hierarchies_equivalent,
    isomorphic,
    parse_code,
    tree_code,
)
from propchordal.oracle import brute_isomorphic, indifference_tree_layouts, is_isomorphism
from propchordal.recognition import attempt_root, is_proper_chordal
from propchordal.treelayout import is_indifference

from strategies import graphs


def hierarchy_at(name, root):
    g = generate(name)
    return g, attempt_root(g, g.vertex(root)).hierarchy


def test_single_leaf_code():
    h = decorate(Graph.from_edges(1, []), None, FPQHierarchy((parse_sexpr("(Q 0)"),)))
    assert str(code_of(h)) == "2 Q 1 L"
    assert parse_code("2 Q 1 L").trees[0].sexpr() == "(Q 0)"


def test_token_order():
    codes = [IsoCode.parse(s) for s in ("3 Q 1 L 1 L", "3 F 1 L 1 L", "3 P 1 L 1 L", "1 L", "10 Q", "2 Q")]
    ranked = [str(c) for c in sorted(codes)]
    assert ranked == ["1 L", "2 Q", "3 F 1 L 1 L", "3 P 1 L 1 L", "3 Q 1 L 1 L", "10 Q"]
    # delimiters are ignored when comparing
    assert IsoCode.parse("3 Q 1 L < 1 1 1 > 1 L") == IsoCode.parse("3 Q 1 L 1 1 1 1 L")


@given(st.lists(st.lists(st.sampled_from("LFPQ0123456789"), min_size=1, max_size=6), min_size=1, max_size=8))
def test_comparator_matches_alphabet_on_single_digit_tokens(seqs):
    alphabet = "LFPQ0123456789"
    codes = [IsoCode.parse(" ".join(s)) for s in seqs]
    by_cmp = [str(c) for c in sorted(codes)]
    by_text = sorted((" ".join(s) for s in seqs), key=lambda t: [alphabet.index(ch) for ch in t.split()])
    assert by_cmp == by_text


def test_shared_skeleton_pair_codes():
    g, hg = hierarchy_at("shared_skeleton_g", "x")
    gp, hp = hierarchy_at("shared_skeleton_h", "x")
    assert code_of(hg) != code_of(hp)
    assert not hierarchies_equivalent(hg, hp)
    # a and b are true twins in H, so its block tree is less constrained
    assert code_of(hg, decorated=False) != code_of(hp, decorated=False)
    assert len(indifference_tree_layouts(g, 0)) == 1 and len(indifference_tree_layouts(gp, 0)) == 2
    # yet every tree-layout of G's hierarchy also certifies H
    assert all(is_indifference(gp, t) for t in enumerate_realizations(hg))
    assert isomorphic(g, gp) is None


def test_decoration_required():
    _, h = hierarchy_at("nested_traces", "x")
    with pytest.raises(ValueError):
        code_of(h.undecorated())
    assert code_of(h.undecorated(), decorated=False) == code_of(h, decorated=False)


@pytest.mark.parametrize("name", ["cevenol", "several_layouts", "shared_skeleton_g", "shared_skeleton_h", "nested_traces"])
def test_parse_roundtrip_fixtures(name):
    g = generate(name)
    for x in range(g.n):
        w = attempt_root(g, x)
        if isinstance(w, str):
            continue
        c = code_of(w.hierarchy)
        rep = parse_code(str(c))
        assert code_of(rep) == c
        assert parse_code(c) == rep


@pytest.mark.parametrize("bad", ["", "2 Q", "2 Q 1 L 1 L", "3 Q 1 L", "2 X 1 L", "2 Q 1 L <", "1 Q", "2 L 1 L"])
def test_parse_errors(bad):
    with pytest.raises(CodeError):
        parse_code(bad)


def test_tree_code_labelled():
    a, b = parse_sexpr("(Q 1 2 3)"), parse_sexpr("(Q 3 2 1)")
    assert tree_code(a, labelled=True) == tree_code(b, labelled=True)
    assert tree_code(a) == tree_code(parse_sexpr("(Q 2 1 3)"))
    assert tree_code(a, labelled=True) != tree_code(parse_sexpr("(Q 2 1 3)"), labelled=True)


def test_isomorphic_errors():
    with pytest.raises(ValueError):
        isomorphic(k_sun(3), k_sun(3))
    with pytest.raises(ValueError):
        isomorphic(path(3), Graph.from_edges(3, [(0, 1)]))
    assert isomorphic(path(3), path(4)) is None
    assert isomorphic(path(4), generate("star", 3)) is None


@given(graphs(max_n=8, connected=True), st.data())
def test_code_invariant_under_rewrites(g, data):
    for x in range(g.n):
        w = attempt_root(g, x)
        if isinstance(w, str):
            continue
        h = w.hierarchy
        choice = {k: data.draw(st.sampled_from(opts)) for k, opts in choice_space(h)}
        assert code_of(reorder(h, choice)) == code_of(h)


@given(graphs(max_n=7, connected=True), st.data())
def test_relabelled_copies_are_isomorphic(g, data):
    if not is_proper_chordal(g):
        return
    perm = data.draw(st.permutations(range(g.n)))
    h = g.relabel(perm)
    f = isomorphic(g, h)
    assert f is not None and is_isomorphism(g, h, f)


def proper_chordal_pool(seed, size, max_n):
    rng = random.Random(seed)
    pool = []
    while len(pool) < size:
        g = random_connected(rng, rng.randint(1, max_n), rng.choice([0.3, 0.5, 0.7]))
        if is_proper_chordal(g):
            pool.append(g)
    return pool


def test_agrees_with_brute_force():
    pool = proper_chordal_pool(11, 120, 7)
    by_size = {}
    for g in pool:
        by_size.setdefault((g.n, g.m), []).append(g)
    pairs = 0
    for group in by_size.values():
        for g1, g2 in itertools.combinations(group, 2):
            f, b = isomorphic(g1, g2), brute_isomorphic(g1, g2)
            assert (f is None) == (b is None)
            if f is not None:
                assert is_isomorphism(g1, g2, f)
            pairs += 1
    assert pairs > 50


def test_codes_separate_rooted_classes():
    # distinct hierarchies of one graph at different roots share a code iff the
    # roots are swapped by an automorphism
    g = generate("several_layouts")
    codes = {}
    for x in range(g.n):
        codes.setdefault(code_of(attempt_root(g, x).hierarchy), []).append(x)
    for c, roots in codes.items():
        for x, y in itertools.combinations(roots, 2):
            assert any(
                f[x] == y and is_isomorphism(g, g, f) for f in map(list, itertools.permutations(range(g.n)))
            )


def test_skeleton_children_sorted_by_label():
    trees = (parse_sexpr("(Q 0 1 2)"), parse_sexpr("(Q 3)"), parse_sexpr("(Q 4)"))
    h1 = FPQHierarchy(trees, (SkeletonEdge(1, 0, 0, 1, 2, 1), SkeletonEdge(2, 0, 0, 2, 3, 1)))
    h2 = FPQHierarchy(trees, (SkeletonEdge(1, 0, 0, 2, 3, 1), SkeletonEdge(2, 0, 0, 1, 2, 1)))
    h3 = FPQHierarchy(trees, (SkeletonEdge(1, 0, 0, 1, 2, 1), SkeletonEdge(2, 0, 0, 1, 2, 1)))
    assert code_of(h1) == code_of(h2)
    assert code_of(h1) != code_of(h3)
