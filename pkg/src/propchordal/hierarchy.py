"""FPQ-hierarchies: canonical construction, decoration, realization, reconstruction."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, replace
from typing import Iterator, Mapping

from .blocks import BlockTree, block_tree, nested_collection_of_block
from .fpq import FPQTree, Node, NotNested, nested_convex_fpq, parse_sexpr
from .graph import Graph
from .treelayout import TreeLayout, is_indifference


class HierarchyFailure(ValueError):
    """Some block admits no valid order; ``stage`` says why."""

    def __init__(self, stage: str, block: int):
        super().__init__(f"{stage} at block {block}")
        self.stage = stage
        self.block = block


@dataclass(frozen=True)
class SkeletonEdge:
    tree: int
    host_tree: int
    host_node: int
    a: int
    b: int
    a_hat: int | None = None


@dataclass(frozen=True)
class FPQHierarchy:
    trees: tuple[FPQTree, ...]
    skeleton: tuple[SkeletonEdge, ...] = ()

    def __post_init__(self):
        if sorted(e.tree for e in self.skeleton) != list(range(1, len(self.trees))):
            raise ValueError("every non-root tree needs exactly one skeleton edge")
        for e in self.skeleton:
            if not 0 <= e.host_tree < e.tree:
                raise ValueError("a tree must hang below an earlier tree")
            host = self.trees[e.host_tree].nodes[e.host_node]
            c = len(host.children)
            if host.kind == "L":
                if (e.a, e.b) != (1, 1):
                    raise ValueError("an edge into a leaf carries label (1,1)")
            elif not 1 <= e.a <= e.b <= c:
                raise ValueError(f"label ({e.a},{e.b}) out of range for {c} children")
            elif host.kind == "P" and (e.a, e.b) != (1, c):
                raise ValueError("an edge into a P-node must span all its children")
        leaves = [x for t in self.trees for x in t.ground]
        if len(set(leaves)) != len(leaves):
            raise ValueError("trees must have disjoint leaf sets")

    @property
    def decorated(self) -> bool:
        return all(e.a_hat is not None for e in self.skeleton)

    def edge_into(self, i: int) -> SkeletonEdge:
        return next(e for e in self.skeleton if e.tree == i)

    def undecorated(self) -> "FPQHierarchy":
        return FPQHierarchy(self.trees, tuple(replace(e, a_hat=None) for e in self.skeleton))

    def to_json(self, name=str) -> str:
        skel = []
        for e in self.skeleton:
            d = {"tree": e.tree, "host_tree": e.host_tree, "host_node": e.host_node, "a": e.a, "b": e.b}
            if e.a_hat is not None:
                d["a_hat"] = e.a_hat
            skel.append(d)
        return json.dumps({"trees": [t.sexpr(name) for t in self.trees], "skeleton": skel}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FPQHierarchy":
        d = json.loads(text)
        trees = tuple(parse_sexpr(s) for s in d["trees"])
        skel = tuple(
            SkeletonEdge(e["tree"], e["host_tree"], e["host_node"], e["a"], e["b"], e.get("a_hat"))
            for e in sorted(d["skeleton"], key=lambda e: e["tree"])
        )
        return cls(trees, skel)

    def to_dot(self, name=str) -> str:
        lines = ["digraph H {", "  node [shape=circle];"]
        for i, t in enumerate(self.trees):
            for j, u in enumerate(t.nodes):
                label = name(u.leaf) if u.kind == "L" else u.kind
                shape = "plaintext" if u.kind == "L" else "circle"
                lines.append(f'  t{i}_{j} [label="{label}", shape={shape}];')
                for k in t.child_ids[j]:
                    lines.append(f"  t{i}_{j} -> t{i}_{k};")
        for e in self.skeleton:
            text = f"[{e.a},{e.b}]" + ("" if e.a_hat is None else f" ({e.a_hat})")
            lines.append(f'  t{e.host_tree}_{e.host_node} -> t{e.tree}_0 [style=dashed, label="{text}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- choices

Choice = Mapping[tuple[int, int], object]
"""Maps ``(tree, node)`` to a permutation tuple (P-nodes) or a reversal flag (Q-nodes)."""


def _ordered_children(h: FPQHierarchy, choice: Choice) -> list[list[list[int]]]:
    out = []
    for i, t in enumerate(h.trees):
        per = []
        for j, u in enumerate(t.nodes):
            kids = list(t.child_ids[j])
            c = choice.get((i, j))
            if c is not None:
                if u.kind == "P":
                    if sorted(c) != list(range(len(kids))):
                        raise ValueError(f"bad permutation for P-node ({i},{j})")
                    kids = [kids[k] for k in c]
                elif u.kind == "Q":
                    if not isinstance(c, bool):
                        raise ValueError(f"Q-node ({i},{j}) takes a reversal flag")
                    if c:
                        kids.reverse()
                else:
                    raise ValueError(f"node ({i},{j}) of kind {u.kind} cannot be reordered")
            per.append(kids)
        out.append(per)
    return out


def _leaf_order(t: FPQTree, kids: list[list[int]], start: int = 0) -> list:
    out, stack = [], [start]
    while stack:
        j = stack.pop()
        if t.nodes[j].kind == "L":
            out.append(t.nodes[j].leaf)
        stack.extend(reversed(kids[j]))
    return out


def adjusted_label(h: FPQHierarchy, e: SkeletonEdge, choice: Choice) -> tuple[int, int]:
    host = h.trees[e.host_tree].nodes[e.host_node]
    if host.kind == "Q" and choice.get((e.host_tree, e.host_node)) is True:
        c = len(host.children)
        return c + 1 - e.b, c + 1 - e.a
    return e.a, e.b


def realize(h: FPQHierarchy, choice: Choice | None = None) -> TreeLayout:
    """Rooted tree obtained from one member of the equivalence class of ``h``.

    Each tree's leaf order becomes a path; a child tree hangs below the last
    leaf (in order) under the ``b``-th child of its host node.
    """
    choice = choice or {}
    kids = _ordered_children(h, choice)
    n = sum(len(t.ground) for t in h.trees)
    parent: list[int | None] = [None] * n
    for i, t in enumerate(h.trees):
        order = _leaf_order(t, kids[i])
        for a, b in zip(order, order[1:]):
            parent[b] = a
    for e in h.skeleton:
        host_t = h.trees[e.host_tree]
        if host_t.nodes[e.host_node].kind == "L":
            anchor = host_t.nodes[e.host_node].leaf
        else:
            _, b = adjusted_label(h, e, choice)
            sub = kids[e.host_tree][e.host_node][b - 1]
            anchor = _leaf_order(host_t, kids[e.host_tree], sub)[-1]
        first = _leaf_order(h.trees[e.tree], kids[e.tree])[0]
        parent[first] = anchor
    return TreeLayout(tuple(parent))


def choice_space(h: FPQHierarchy) -> list[tuple[tuple[int, int], list]]:
    """Reorderable nodes with their possible settings."""
    out = []
    for i, t in enumerate(h.trees):
        for j, u in enumerate(t.nodes):
            k = len(u.children)
            if u.kind == "P":
                out.append(((i, j), list(itertools.permutations(range(k)))))
            elif u.kind == "Q" and k > 1:
                out.append(((i, j), [False, True]))
    return out


def count_choices(h: FPQHierarchy) -> int:
    return math.prod(len(opts) for _, opts in choice_space(h))


def iter_realizations(h: FPQHierarchy) -> Iterator[TreeLayout]:
    """Distinct realizations in choice-product order, lazily."""
    space = choice_space(h)
    keys = [k for k, _ in space]
    seen = set()
    for combo in itertools.product(*(opts for _, opts in space)):
        t = realize(h, dict(zip(keys, combo)))
        if t.parent not in seen:
            seen.add(t.parent)
            yield t


def enumerate_realizations(h: FPQHierarchy, limit: int = 100_000) -> list[TreeLayout]:
    """All distinct rooted trees of the class, sorted by parent array."""
    if count_choices(h) > limit:
        raise ValueError(f"more than {limit} realizations")
    out = list(iter_realizations(h))
    return sorted(out, key=lambda t: [-1 if x is None else x for x in t.parent])


def reorder(h: FPQHierarchy, choice: Choice) -> FPQHierarchy:
    """Equivalent hierarchy whose stated child orders are those of ``choice``.

    Labels on edges into reversed Q-nodes are mirrored, so that
    ``realize(reorder(h, c)) == realize(h, c)``.
    """
    kids = _ordered_children(h, choice)
    new_trees, renum = [], []
    for i, t in enumerate(h.trees):
        ids: dict[int, int] = {}

        def build(j: int) -> Node:
            ids[j] = len(ids)
            u = t.nodes[j]
            if u.kind == "L":
                return u
            return Node(u.kind, tuple(build(k) for k in kids[i][j]))

        new_trees.append(FPQTree(build(0)))
        renum.append(ids)
    skel = []
    for e in h.skeleton:
        a, b = adjusted_label(h, e, choice)
        skel.append(replace(e, host_node=renum[e.host_tree][e.host_node], a=a, b=b))
    return FPQHierarchy(tuple(new_trees), tuple(skel))


# --------------------------------------------------------- canonical hierarchy


def block_fpq_trees(g: Graph, bt: BlockTree) -> list[FPQTree]:
    """Per-block tree of admissible orders; raises HierarchyFailure."""
    trees = []
    for b in range(len(bt.blocks)):
        coll = nested_collection_of_block(g, bt, b)
        try:
            t = nested_convex_fpq(coll)
        except NotNested:
            raise HierarchyFailure("not_nested", b) from None
        if t is None:
            raise HierarchyFailure("empty_nested_convex", b)
        trees.append(t)
    return trees


def attachment(t: FPQTree, trace: frozenset[int]) -> tuple[int, int, int]:
    """Host node and label for a child block whose neighbours in this block are ``trace``.

    A single neighbour below an F- or Q-node is addressed through that node;
    below a P-node the leaf itself is the host.
    """
    u = t.lca(trace)
    if t.nodes[u].kind == "L":
        p = t.parent[u]
        if p is not None and t.nodes[p].kind in "FQ":
            pos = t.child_ids[p].index(u) + 1
            return p, pos, pos
        return u, 1, 1
    label = t.interval(u, trace)
    if label is None:
        raise AssertionError(f"trace {sorted(trace)} is not a union of consecutive children")
    return u, label[0], label[1]


def hierarchy_from_block_tree(g: Graph, bt: BlockTree) -> FPQHierarchy:
    trees = block_fpq_trees(g, bt)
    skel = []
    for b in range(1, len(bt.blocks)):
        p = bt.parent[b]
        z = min(bt.blocks[b])
        host, a, bb = attachment(trees[p], g.adj[z] & bt.blocks[p])
        skel.append(SkeletonEdge(b, p, host, a, bb))
    return FPQHierarchy(tuple(trees), tuple(skel))


def canonical_hierarchy(g: Graph, t: TreeLayout) -> FPQHierarchy:
    """Hierarchy whose realizations are all indifference tree-layouts rooted at ``t.root``."""
    if not is_indifference(g, t):
        raise ValueError("tree-layout is not an indifference tree-layout")
    bt = block_tree(g, t.root)
    if bt is None:
        raise AssertionError("an indifference tree-layout exists but the block search failed")
    return hierarchy_from_block_tree(g, bt)


def decorate(g: Graph, t: TreeLayout | None, h: FPQHierarchy) -> FPQHierarchy:
    """Fill ``a_hat``: how many vertices above a block see some vertex of it."""
    parent_tree = {e.tree: e.host_tree for e in h.skeleton}
    edges = []
    for e in h.skeleton:
        block = set(h.trees[e.tree].ground)
        above: set[int] = set()
        i = e.tree
        while i in parent_tree:
            i = parent_tree[i]
            above |= set(h.trees[i].ground)
        seen = {y for y in above if g.adj[y] & block}
        edges.append(replace(e, a_hat=len(seen)))
    return FPQHierarchy(h.trees, tuple(edges))


def reconstruct_graph(h: FPQHierarchy, choice: Choice | None = None) -> Graph:
    """Graph for which the chosen realization is an indifference tree-layout.

    A vertex at position ``p`` of its block's path sees exactly the
    ``p + a_hat`` vertices directly above it.
    """
    if not h.decorated:
        raise ValueError("reconstruction needs a decorated hierarchy")
    choice = choice or {}
    t = realize(h, choice)
    kids = _ordered_children(h, choice)
    a_hat = {e.tree: e.a_hat for e in h.skeleton}
    edges = []
    for i, tree in enumerate(h.trees):
        extra = a_hat.get(i, 0)
        for pos, z in enumerate(_leaf_order(tree, kids[i])):
            up = t.root_path(z)[:-1]
            reach = pos + extra
            if reach > len(up):
                raise ValueError(f"corrupt hierarchy: vertex {z} would need {reach} ancestors")
            edges += [(u, z) for u in up[len(up) - reach:]]
    return Graph.from_edges(t.n, edges)

