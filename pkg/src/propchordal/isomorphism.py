"""Canonical codes of decorated FPQ-hierarchies and isomorphism of proper chordal graphs.

A code is a token sequence. Tokens are node kinds ``L < F < P < Q``,
non-negative integers (compared numerically, all above the kinds) and the
label delimiters ``<`` and ``>``, which are rendered but ignored when
comparing. For a node ``t``::

    code(t) = size(t) kind(t) code(b_1) ... code(b_k) <a b a_hat> code(s_1) ...

where the block children ``b_i`` appear in the least eligible order and the
skeleton children ``s_j`` are sorted by label then code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Sequence, Union

from .fpq import FPQTree, Node, leaf, sortkey
from .graph import Graph, is_connected
from .hierarchy import FPQHierarchy, SkeletonEdge
from .recognition import attempt_root

Token = Union[str, int]
_KIND_RANK = {"L": 0, "F": 1, "P": 2, "Q": 3}


class CodeError(ValueError):
    pass


def _key(tokens: Sequence[Token]) -> tuple:
    out = []
    for tok in tokens:
        if isinstance(tok, int):
            out.append(4 + tok)
        elif tok in _KIND_RANK:
            out.append(_KIND_RANK[tok])
    return tuple(out)


@total_ordering
@dataclass(frozen=True)
class IsoCode:
    tokens: tuple[Token, ...]

    @property
    def key(self) -> tuple:
        return _key(self.tokens)

    def __eq__(self, other) -> bool:
        return isinstance(other, IsoCode) and self.key == other.key

    def __lt__(self, other: "IsoCode") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens)

    @classmethod
    def parse(cls, text: str) -> "IsoCode":
        toks: list[Token] = []
        for raw in text.replace("<", " < ").replace(">", " > ").split():
            if raw in ("<", ">") or raw in _KIND_RANK:
                toks.append(raw)
            elif raw.isdigit():
                toks.append(int(raw))
            else:
                raise CodeError(f"bad token {raw!r}")
        return cls(tuple(toks))


@dataclass
class CNode:
    """A hierarchy node with its children in canonical order."""

    kind: str
    leaf: object
    block: list["CNode"]
    skel: list[tuple[tuple[int, ...], "CNode"]]
    size: int
    tokens: tuple[Token, ...] = field(repr=False)


def _canon(h: FPQHierarchy, decorated: bool, leaf_rank: dict | None) -> CNode:
    at: dict[tuple[int, int], list[SkeletonEdge]] = {}
    for e in h.skeleton:
        at.setdefault((e.host_tree, e.host_node), []).append(e)

    def rec(i: int, j: int) -> CNode:
        t = h.trees[i]
        u = t.nodes[j]
        kids = [rec(i, c) for c in t.child_ids[j]]
        k = len(kids)
        subs = []
        for e in at.get((i, j), []):
            lab = (e.a, e.b) + ((e.a_hat,) if decorated else ())
            subs.append((lab, rec(e.tree, 0)))
        size = 1 + sum(c.size for c in kids) + sum(c.size for _, c in subs)
        head: list[Token] = [size, u.kind]
        if u.kind == "L" and leaf_rank is not None:
            head.append(leaf_rank[u.leaf])
        if u.kind == "P":
            orders = [sorted(kids, key=lambda c: _key(c.tokens))]
        elif u.kind == "Q" and k > 1:
            orders = [kids, kids[::-1]]
        else:
            orders = [kids]
        best = None
        for idx, order in enumerate(orders):
            flipped = idx == 1
            parts = []
            for lab, child in subs:
                if flipped:
                    lab = (k + 1 - lab[1], k + 1 - lab[0]) + lab[2:]
                parts.append((lab, child))
            parts.sort(key=lambda p: _key(("<",) + p[0] + (">",) + p[1].tokens))
            toks = list(head)
            for c in order:
                toks += c.tokens
            for lab, child in parts:
                toks += ["<", *lab, ">"]
                toks += child.tokens
            cand = CNode(u.kind, u.leaf, list(order), parts, size, tuple(toks))
            if best is None or _key(cand.tokens) < _key(best.tokens):
                best = cand
        return best

    return rec(0, 0)


def canonical_tree(h: FPQHierarchy, decorated: bool = True) -> CNode:
    if decorated and not h.decorated:
        raise ValueError("hierarchy is not decorated; pass decorated=False for the bare code")
    return _canon(h, decorated, None)


def code_of(h: FPQHierarchy, decorated: bool = True) -> IsoCode:
    """Least code over all permute/reverse rewrites of ``h``."""
    return IsoCode(canonical_tree(h, decorated).tokens)


def tree_code(t: FPQTree, labelled: bool = False) -> IsoCode:
    """Code of a single tree; with ``labelled`` each leaf also records its label rank."""
    rank = {x: i for i, x in enumerate(sorted(t.ground, key=sortkey))} if labelled else None
    return IsoCode(_canon(FPQHierarchy((t,)), False, rank).tokens)


def hierarchies_equivalent(h1: FPQHierarchy, h2: FPQHierarchy, decorated: bool = True) -> bool:
    return code_of(h1, decorated) == code_of(h2, decorated)


# ------------------------------------------------------------------- parsing


@dataclass
class _PNode:
    kind: str
    block: list["_PNode"]
    skel: list[tuple[tuple[int, ...], "_PNode"]]
    size: int


def _parse_tokens(tokens: Sequence[Token]) -> _PNode:
    toks = list(tokens)
    pos = 0

    def need(cond: bool, msg: str):
        if not cond:
            raise CodeError(msg)

    def ints_run() -> list[int]:
        nonlocal pos
        run = []
        while pos < len(toks) and isinstance(toks[pos], int):
            run.append(toks[pos])
            pos += 1
        return run

    def node(size: int | None = None) -> _PNode:
        nonlocal pos
        if size is None:
            need(pos < len(toks) and isinstance(toks[pos], int), "expected a size")
            size = toks[pos]
            pos += 1
        need(pos < len(toks) and toks[pos] in _KIND_RANK, "expected a node kind")
        kind = toks[pos]
        pos += 1
        need(size >= 1, "sizes are positive")
        remaining = size - 1
        block, skel = [], []
        while remaining > 0:
            need(pos < len(toks), "code ends early")
            if toks[pos] == "<":
                pos += 1
                label = ints_run()
                need(pos < len(toks) and toks[pos] == ">", "unterminated label")
                pos += 1
                child = node()
                skel.append((tuple(label), child))
            else:
                run = ints_run()
                need(len(run) >= 1, "expected a size or a label")
                if len(run) == 1:
                    child = node(run[0])
                    block.append(child)
                else:
                    child = node(run[-1])
                    skel.append((tuple(run[:-1]), child))
            remaining -= child.size
        need(remaining == 0, "child sizes do not add up")
        need(kind != "L" or not block, "a leaf cannot have block children")
        need(kind == "L" or block, "an internal node needs block children")
        return _PNode(kind, block, skel, size)

    root = node()
    need(pos == len(toks), "trailing tokens")
    return root


def parse_code(c: IsoCode | str) -> FPQHierarchy:
    """Representative hierarchy with the given code; leaves are numbered in tree order."""
    code = IsoCode.parse(c) if isinstance(c, str) else c
    root = _parse_tokens(code.tokens)
    roots = [root]
    edges: list[tuple[int, int, int, tuple[int, ...]]] = []
    shapes = []
    i = 0
    while i < len(roots):
        counter = 0

        def walk(p: _PNode):
            nonlocal counter
            me = counter
            counter += 1
            for lab, child in p.skel:
                edges.append((len(roots), i, me, lab))
                roots.append(child)
            return (p.kind, [walk(b) for b in p.block])

        shapes.append(walk(roots[i]))
        i += 1
    next_leaf = 0

    def build(shape) -> Node:
        nonlocal next_leaf
        kind, kids = shape
        if kind == "L":
            next_leaf += 1
            return leaf(next_leaf - 1)
        return Node(kind, tuple(build(k) for k in kids))

    trees = []
    for s in shapes:
        node_ = build(s)
        trees.append(FPQTree(node_) if node_.kind != "L" else FPQTree.single(node_.leaf))
    skel = []
    for tree, host_tree, host_node, lab in edges:
        if len(lab) not in (2, 3):
            raise CodeError("labels carry two or three integers")
        skel.append(SkeletonEdge(tree, host_tree, host_node, lab[0], lab[1], lab[2] if len(lab) == 3 else None))
    try:
        return FPQHierarchy(tuple(trees), tuple(sorted(skel, key=lambda e: e.tree)))
    except ValueError as exc:
        raise CodeError(str(exc)) from None


# --------------------------------------------------------------- isomorphism


def _align(a: CNode, b: CNode, out: dict[int, int]) -> None:
    if a.kind == "L":
        out[a.leaf] = b.leaf
    for x, y in zip(a.block, b.block):
        _align(x, y, out)
    for (_, x), (_, y) in zip(a.skel, b.skel):
        _align(x, y, out)


def isomorphic(g1: Graph, g2: Graph) -> list[int] | None:
    """Vertex bijection ``f`` with ``uv`` an edge iff ``f[u]f[v]`` is, or None.

    Both graphs must be connected and proper chordal.
    """
    for g in (g1, g2):
        if not is_connected(g):
            raise ValueError("isomorphism test requires connected graphs")
    first = None
    for x in range(g1.n):
        w = attempt_root(g1, x)
        if not isinstance(w, str):
            first = w
            break
    if first is None:
        raise ValueError("first graph is not proper chordal")
    c1 = canonical_tree(first.hierarchy)
    feasible = False
    for x2 in range(g2.n):
        w2 = attempt_root(g2, x2)
        if isinstance(w2, str):
            continue
        feasible = True
        if g1.n != g2.n or g1.m != g2.m:
            return None
        c2 = canonical_tree(w2.hierarchy)
        if _key(c1.tokens) != _key(c2.tokens):
            continue
        f: dict[int, int] = {}
        _align(c1, c2, f)
        perm = [f[v] for v in range(g1.n)]
        assert all(perm[v] in g2.adj[perm[u]] for u, v in g1.edges()), "aligned codes gave a non-isomorphism"
        return perm
    if not feasible:
        raise ValueError("second graph is not proper chordal")
    return None
