"""Tree-layouts: validity, the four indifference checks, and the chordal bridges."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .graph import Graph
from .patterns import builtin_pattern_set, treelayout_occurrences

INDIFFERENCE_METHODS = ("patterns", "closed_nbhd", "cliques", "nested")


@dataclass(frozen=True)
class TreeLayout:
    """Rooted tree whose nodes are the graph's vertices.

    ``parent[v]`` is the parent vertex of ``v`` (``None`` for the root).
    Node ids coincide with vertex ids, so the bijection is the identity.
    """

    parent: tuple[int | None, ...]

    def __post_init__(self):
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError(f"a tree-layout needs exactly one root, found {len(roots)}")
        n = len(self.parent)
        for v, p in enumerate(self.parent):
            if p is not None and not 0 <= p < n:
                raise ValueError(f"parent of {v} out of range")
        for v in range(n):
            seen = set()
            u = v
            while u is not None:
                if u in seen:
                    raise ValueError("parent links contain a cycle")
                seen.add(u)
                u = self.parent[u]

    @classmethod
    def from_parent(cls, parent: Sequence[int | None]) -> "TreeLayout":
        return cls(tuple(parent))

    @classmethod
    def path(cls, order: Sequence[int]) -> "TreeLayout":
        """Path-shaped layout with ``order[0]`` as the root."""
        parent: list[int | None] = [None] * len(order)
        for a, b in zip(order, order[1:]):
            parent[b] = a
        return cls(tuple(parent))

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def root(self) -> int:
        return self.parent.index(None)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        return tuple(len(self.root_path(v)) - 1 for v in range(self.n))

    def root_path(self, v: int) -> list[int]:
        """Vertices from the root down to ``v`` inclusive."""
        out = []
        while v is not None:
            out.append(v)
            v = self.parent[v]
        return out[::-1]

    def ancestors(self, v: int) -> set[int]:
        return set(self.root_path(v)[:-1])

    def descendants(self, v: int) -> set[int]:
        out, stack = set(), list(self.children[v])
        while stack:
            u = stack.pop()
            out.add(u)
            stack.extend(self.children[u])
        return out

    def is_ancestor(self, u: int, v: int) -> bool:
        """True iff ``u`` is a strict ancestor of ``v``."""
        v = self.parent[v]
        while v is not None:
            if v == u:
                return True
            v = self.parent[v]
        return False

    def comparable(self, u: int, v: int) -> bool:
        return self.is_ancestor(u, v) or self.is_ancestor(v, u)

    def preorder(self) -> list[int]:
        """Depth-first order, children visited by ascending vertex id."""
        out, stack = [], [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(sorted(self.children[v], reverse=True))
        return out

    def to_json(self) -> str:
        n = self.n
        return json.dumps(
            {"root": self.root, "parent": list(self.parent), "vertex_of": list(range(n))},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "TreeLayout":
        data = json.loads(text)
        parent_nodes = data["parent"]
        vertex_of = data.get("vertex_of", list(range(len(parent_nodes))))
        n = len(parent_nodes)
        if sorted(vertex_of) != list(range(n)):
            raise ValueError("vertex_of must be a bijection onto 0..n-1")
        parent: list[int | None] = [None] * n
        for node, p in enumerate(parent_nodes):
            parent[vertex_of[node]] = None if p is None else vertex_of[p]
        t = cls(tuple(parent))
        if "root" in data and vertex_of[data["root"]] != t.root:
            raise ValueError("declared root disagrees with parent array")
        return t

    def to_dot(self, g: Graph | None = None) -> str:
        name = g.name if g is not None else str
        lines = ["digraph T {", "  node [shape=circle];"]
        for v in range(self.n):
            lines.append(f'  {v} [label="{name(v)}"];')
        for v, p in enumerate(self.parent):
            if p is not None:
                lines.append(f"  {p} -> {v};")
        if g is not None:
            for u, v in g.edges():
                if self.parent[v] != u and self.parent[u] != v:
                    lines.append(f"  {u} -> {v} [dir=none, style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def is_tree_layout(g: Graph, t: TreeLayout) -> bool:
    if t.n != g.n:
        raise ValueError("tree-layout and graph differ in size")
    return all(t.comparable(u, v) for u, v in g.edges())


def _check_layout(g: Graph, t: TreeLayout) -> None:
    if not is_tree_layout(g, t):
        raise ValueError("not a tree-layout of the graph: some edge joins incomparable vertices")


def _by_patterns(g: Graph, t: TreeLayout) -> bool:
    return all(not treelayout_occurrences(g, t, p) for p in builtin_pattern_set("proper"))


def _by_closed_nbhd(g: Graph, t: TreeLayout) -> bool:
    for x in range(g.n):
        closed = g.adj[x] | {x}
        # a node set of a rooted tree is connected iff exactly one member has its parent outside
        tops = [v for v in closed if t.parent[v] not in closed]
        if len(tops) != 1:
            return False
    return True


def _on_vertical_run(t: TreeLayout, vs: Iterable[int]) -> bool:
    vs = set(vs)
    deepest = max(vs, key=lambda v: t.depth[v])
    path = t.root_path(deepest)
    return set(path[len(path) - len(vs):]) == vs


def _by_cliques(g: Graph, t: TreeLayout) -> bool:
    return all(_on_vertical_run(t, k) for k in nx.find_cliques(to_networkx(g)))


def _by_nested(g: Graph, t: TreeLayout) -> bool:
    anc = [t.ancestors(v) for v in range(g.n)]
    desc = [t.descendants(v) for v in range(g.n)]
    for y in range(g.n):
        for x in anc[y]:
            if not (g.adj[y] & anc[x]) <= (g.adj[x] & anc[x]):
                return False
            if not (g.adj[x] & desc[y]) <= (g.adj[y] & desc[y]):
                return False
    return True


_METHODS = {
    "patterns": _by_patterns,
    "closed_nbhd": _by_closed_nbhd,
    "cliques": _by_cliques,
    "nested": _by_nested,
}


def is_indifference(g: Graph, t: TreeLayout, method: str = "patterns") -> bool:
    """Decide whether ``t`` is a proper-pattern-free tree-layout of ``g``."""
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    _check_layout(g, t)
    return _METHODS[method](g, t)


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# ------------------------------------------------------ tree intersection models


@dataclass(frozen=True)
class TreeIntersectionModel:
    """Host tree on nodes ``0..hosts-1`` and one connected node set per vertex."""

    hosts: int
    host_edges: tuple[tuple[int, int], ...]
    subtrees: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.hosts < 1 or len(self.host_edges) != self.hosts - 1:
            raise ValueError("host must be a tree")
        h = nx.Graph()
        h.add_nodes_from(range(self.hosts))
        h.add_edges_from(self.host_edges)
        if not nx.is_tree(h):
            raise ValueError("host must be a tree")
        for i, s in enumerate(self.subtrees):
            if not s or not s <= set(range(self.hosts)):
                raise ValueError(f"subtree {i} is empty or out of range")
            if not nx.is_connected(h.subgraph(s)):
                raise ValueError(f"subtree {i} is not connected in the host")

    def intersection_graph(self) -> Graph:
        n = len(self.subtrees)
        return Graph.from_edges(
            n,
            [(u, v) for u in range(n) for v in range(u + 1, n) if self.subtrees[u] & self.subtrees[v]],
        )


def treelayout_from_model(m: TreeIntersectionModel) -> TreeLayout:
    """Tree-layout of the intersection graph, free of the interval patterns.

    The host is rooted inside the subtree of vertex 0, so that its root is
    the top node of some subtree. Host nodes that are not the top node of
    any subtree are contracted into their parent, and every remaining node
    is expanded into a path of the vertices whose subtree it tops.
    """
    adj: dict[int, list[int]] = {i: [] for i in range(m.hosts)}
    for a, b in m.host_edges:
        adj[a].append(b)
        adj[b].append(a)
    root = min(m.subtrees[0])
    hparent = {root: None}
    order = [root]
    for u in order:
        for w in sorted(adj[u]):
            if w not in hparent:
                hparent[w] = u
                order.append(w)
    hdepth = {root: 0}
    for u in order[1:]:
        hdepth[u] = hdepth[hparent[u]] + 1
    top = [min(s, key=lambda u: (hdepth[u], u)) for s in m.subtrees]
    holders: dict[int, list[int]] = {}
    for v, u in enumerate(top):
        holders.setdefault(u, []).append(v)

    # nearest proper host ancestor that tops some subtree
    def kept_parent(u: int) -> int | None:
        p = hparent[u]
        while p is not None and p not in holders:
            p = hparent[p]
        return p

    parent: list[int | None] = [None] * len(m.subtrees)
    for u, vs in holders.items():
        vs = sorted(vs)
        p = kept_parent(u)
        parent[vs[0]] = None if p is None else sorted(holders[p])[-1]
        for a, b in zip(vs, vs[1:]):
            parent[b] = a
    return TreeLayout(tuple(parent))


def _interval_free(g: Graph, t: TreeLayout) -> bool:
    return all(not treelayout_occurrences(g, t, p) for p in builtin_pattern_set("int"))


def model_from_treelayout(g: Graph, t: TreeLayout) -> TreeIntersectionModel:
    """Tree intersection model on the host ``t`` itself.

    The subtree of ``x`` spans ``x`` and its lowest descendant neighbours
    (those below which ``x`` has no further neighbour).
    """
    _check_layout(g, t)
    if not _interval_free(g, t):
        raise ValueError("tree-layout contains an interval-forbidden pattern")
    desc = [t.descendants(v) for v in range(g.n)]
    subtrees = []
    for x in range(g.n):
        lowest = [y for y in g.adj[x] & desc[x] if not (g.adj[x] & desc[y])]
        nodes = {x}
        for y in lowest:
            u = y
            while u != x:
                nodes.add(u)
                u = t.parent[u]
        subtrees.append(frozenset(nodes))
    host_edges = tuple(sorted((p, v) for v, p in enumerate(t.parent) if p is not None))
    return TreeIntersectionModel(g.n, host_edges, tuple(subtrees))


def flatten_dfs(g: Graph, t: TreeLayout) -> list[int]:
    """Preorder of ``t``; free of the chordal pattern when ``t`` is."""
    _check_layout(g, t)
    (chordal,) = builtin_pattern_set("chordal")
    if treelayout_occurrences(g, t, chordal):
        raise ValueError("tree-layout contains the chordal pattern")
    return t.preorder()


def is_perfect_elimination_reversed(g: Graph, layout: Sequence[int]) -> bool:
    """True iff every vertex's earlier neighbours form a clique."""
    pos = {v: i for i, v in enumerate(layout)}
    for v in layout:
        earlier = [u for u in g.adj[v] if pos[u] < pos[v]]
        for i, a in enumerate(earlier):
            for b in earlier[i + 1:]:
                if b not in g.adj[a]:
                    return False
    return True

