import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from propchordal.fpq import (
    FPQTree,
    NestedCollection,
    NotNested,
    convex_pq,
    dumps,
    factors,
    fpq_equivalent,
    frontier_set,
    nested_convex_fpq,
    parse_sexpr,
)
from propchordal.oracle import brute_permutation_sets

FROZEN_EXAMPLE = "(F (Q a b c) d)"
NESTED_FAMILIES = [["abcde", "bcde"], ["bc"], ["cd"], ["de"]]


def words(perms):
    return {"".join(p) for p in perms}


def test_frontier_examples():
    assert words(frontier_set(parse_sexpr("(Q a b c)"))) == {"abc", "cba"}
    assert words(frontier_set(parse_sexpr("(F a b c)"))) == {"abc"}
    assert words(frontier_set(parse_sexpr(FROZEN_EXAMPLE))) == {"abcd", "cbad"}
    assert len(frontier_set(parse_sexpr("(P a b c d)"))) == 24
    with pytest.raises(ValueError):
        frontier_set(parse_sexpr("(P a b c d e f g h)"), limit=100)


def test_convex_set_of_frozen_example():
    convex, _ = brute_permutation_sets("abcd", [["abc", "ab", "bc"]])
    assert {"abcd", "cbad", "dabc", "dcba"} <= words(convex)
    t = convex_pq("abcd", ["abc", "ab", "bc"])
    assert words(frontier_set(t)) == words(convex)


def test_convex_examples():
    t = convex_pq("abc", ["ab", "bc"])
    assert t.sexpr() == "(Q a b c)"
    assert words(frontier_set(t)) == {"abc", "cba"}
    assert convex_pq("abc", []).sexpr() == "(P a b c)"
    assert convex_pq("abc", ["ab", "bc", "ac"]) is None
    assert convex_pq("a", []).sexpr() == "(Q a)"
    assert convex_pq("ab", []).sexpr() == "(Q a b)"


def test_nested_examples():
    t = nested_convex_fpq(NestedCollection.make("abcde", NESTED_FAMILIES))
    assert t.sexpr() == "(F a (Q b c d e))"
    assert words(frontier_set(t)) == {"abcde", "aedcb"}
    assert words(frontier_set(nested_convex_fpq(NestedCollection.make("abc", [["abc"]])))) == words(
        itertools.permutations("abc")
    )
    assert nested_convex_fpq(NestedCollection.make("ab", [["a", "ab"], ["b", "ab"]])) is None
    with pytest.raises(NotNested):
        nested_convex_fpq(NestedCollection.make("abc", [["ab", "bc"]]))


def test_factor_examples():
    assert {"".join(sorted(s)) for s in factors(parse_sexpr("(Q a b c)"))} == {"a", "b", "c", "ab", "bc", "abc"}
    assert {"".join(sorted(s)) for s in factors(parse_sexpr("(P a b c)"))} == {"a", "b", "c", "abc"}
    assert {"abc", "ab", "bc"} <= {"".join(sorted(s)) for s in factors(parse_sexpr(FROZEN_EXAMPLE))}


def test_equivalence_examples():
    assert fpq_equivalent(parse_sexpr("(Q a b c)"), parse_sexpr("(Q c b a)"))
    assert not fpq_equivalent(parse_sexpr("(F a b)"), parse_sexpr("(F b a)"))
    assert not fpq_equivalent(parse_sexpr("(Q a b c)"), parse_sexpr("(P a b c)"))
    assert fpq_equivalent(parse_sexpr("(P a (Q b c d) e)"), parse_sexpr("(P e a (Q d c b))"))
    assert not fpq_equivalent(parse_sexpr("(P a (Q b c d) e)"), parse_sexpr("(P e a (Q d b c))"))
    with pytest.raises(ValueError):
        fpq_equivalent(parse_sexpr("(Q a b)"), parse_sexpr("(Q a c)"))


def test_serialisation_roundtrip():
    t = parse_sexpr("(F (Q 1 2 3) (P 4 5 6) 7)")
    assert parse_sexpr(t.sexpr()) == t
    assert FPQTree.from_json(json.loads(dumps(t))) == t
    assert t.ground == [1, 2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("bad", ["(P a b)", "(Q a)", "(F a a)", "(X a b)", "(Q a b", "a"])
def test_shape_rules(bad):
    if bad == "(Q a)":
        # the degenerate single-element tree is the only unary node
        assert parse_sexpr(bad).ground == ["a"]
        with pytest.raises(ValueError):
            parse_sexpr("(F (Q a) b)")
        return
    with pytest.raises(ValueError):
        parse_sexpr(bad)


@st.composite
def ground_and_sets(draw):
    n = draw(st.integers(1, 6))
    ground = list(range(n))
    sets = draw(st.lists(st.frozensets(st.sampled_from(ground), min_size=1), max_size=5))
    return ground, sets


@st.composite
def ground_and_chains(draw):
    n = draw(st.integers(1, 6))
    ground = list(range(n))
    fams = []
    for _ in range(draw(st.integers(0, 4))):
        top = draw(st.frozensets(st.sampled_from(ground), min_size=1))
        chain = [top]
        while len(chain[-1]) > 1 and draw(st.booleans()):
            cur = sorted(chain[-1])
            chain.append(frozenset(draw(st.lists(st.sampled_from(cur), min_size=1, max_size=len(cur) - 1))))
        fams.append(chain)
    return ground, fams


@given(ground_and_sets())
def test_convex_matches_brute_force(case):
    ground, sets = case
    convex, _ = brute_permutation_sets(ground, [sets])
    t = convex_pq(ground, sets)
    assert (frontier_set(t) if t else []) == sorted(convex)


@given(ground_and_chains())
def test_nested_convex_matches_brute_force(case):
    ground, fams = case
    _, nested = brute_permutation_sets(ground, fams)
    t = nested_convex_fpq(NestedCollection.make(ground, fams))
    assert (frontier_set(t) if t else []) == sorted(nested)


@given(ground_and_chains())
def test_frozen_lca_of_largest_chain_set(case):
    ground, fams = case
    c = NestedCollection.make(ground, fams)
    t = nested_convex_fpq(c)
    if t is None:
        return
    for fam in c.families:
        if len(fam) >= 2:
            assert t.nodes[t.lca(fam[0])].kind == "F"


@given(ground_and_sets())
def test_factors_are_common_intervals(case):
    ground, sets = case
    t = convex_pq(ground, sets)
    if t is None:
        return
    perms = frontier_set(t)
    common = set()
    for k in range(1, len(ground) + 1):
        for s in itertools.combinations(ground, k):
            pos = [[p.index(x) for x in s] for p in perms]
            if all(max(q) - min(q) + 1 == k for q in pos):
                common.add(frozenset(s))
    assert set(factors(t)) == common


@given(ground_and_sets(), st.data())
def test_equivalence_is_frontier_equality(case, data):
    ground, sets = case
    t = convex_pq(ground, sets)
    if t is None:
        return
    shuffled = data.draw(st.permutations(ground))
    assert fpq_equivalent(t, convex_pq(shuffled, sets))
    other = data.draw(st.lists(st.frozensets(st.sampled_from(ground), min_size=1), max_size=5))
    u = convex_pq(ground, other)
    if u is not None:
        assert fpq_equivalent(t, u) == (frontier_set(t) == frontier_set(u))
