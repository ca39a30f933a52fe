"""Brute-force references for small instances.

Nothing here calls the block, FPQ, hierarchy, recognition or isomorphism
modules; only graphs, patterns and the tree-layout checks are used.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import Graph, connected_components
from .patterns import Pattern, builtin_pattern_set
from .treelayout import TreeLayout, is_indifference


class BudgetExceeded(RuntimeError):
    pass


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 8
    max_enumerations: int = 5_000_000
    time_limit: float = 600.0

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_enumerations <= 0 or self.time_limit <= 0:
            raise ValueError("budget fields must be positive")

    @classmethod
    def from_env(cls) -> "SearchBudget":
        """Defaults overridable through ``PROPCHORDAL_MAX_VERTICES`` and friends."""
        return cls(
            _env_int("PROPCHORDAL_MAX_VERTICES", 8),
            _env_int("PROPCHORDAL_MAX_ENUMERATIONS", 5_000_000),
            float(_env_int("PROPCHORDAL_TIME_LIMIT", 600)),
        )

    def check_size(self, n: int) -> None:
        if n > self.max_vertices:
            raise BudgetExceeded(f"{n} vertices exceed the budget of {self.max_vertices}")


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.count = 0
        self.start = time.monotonic()

    def tick(self) -> None:
        self.count += 1
        if self.count > self.budget.max_enumerations:
            raise BudgetExceeded("enumeration budget exhausted")
        if self.count % 4096 == 0 and time.monotonic() - self.start > self.budget.time_limit:
            raise BudgetExceeded("time budget exhausted")


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]


def _prunes(g: Graph, ancestors: Sequence[int], y: int, below: Iterable[int], patterns) -> bool:
    """True if placing ``y`` under ``ancestors`` with ``below`` as its descendants
    creates an occurrence whose middle (or last, for size 2) vertex is ``y``."""
    for p in patterns:
        if p.k == 2:
            if any(p.matches(g, (a, y)) for a in ancestors):
                return True
        elif p.k == 3:
            for a in ancestors:
                for z in below:
                    if p.matches(g, (a, y, z)):
                        return True
    return False


def _layouts_rooted(g, root, vertices, patterns, meter) -> Iterator[dict[int, int | None]]:
    """Parent maps of tree-layouts of ``g[vertices]`` rooted at ``root``.

    Subtrees of the root are unions of components of ``g[vertices] - root``;
    every tree-layout arises exactly once.
    """

    def grow(r: int, group: frozenset[int], ancestors: tuple[int, ...]):
        rest = group - {r}
        comps = connected_components(g, set(range(g.n)) - rest)
        for part in _set_partitions(comps):
            subs = [frozenset().union(*blocks) for blocks in part]
            yield from place(r, subs, ancestors + (r,))

    def place(r, subs, ancestors):
        if not subs:
            meter.tick()
            yield {}
            return
        first, others = subs[0], subs[1:]
        for y in sorted(first):
            if patterns and _prunes(g, ancestors, y, first - {y}, patterns):
                continue
            for sub_map in grow(y, first, ancestors):
                for rest_map in place(r, others, ancestors):
                    out = dict(sub_map)
                    out.update(rest_map)
                    out[y] = r
                    yield out

    for m in grow(root, frozenset(vertices), ()):
        m = dict(m)
        m[root] = None
        yield m


def iter_tree_layouts(
    g: Graph,
    root: int | None = None,
    patterns: Sequence[Pattern] = (),
    budget: SearchBudget | None = None,
) -> Iterator[TreeLayout]:
    """Tree-layouts of ``g``; patterns of size at most 3 are pruned during the
    search and larger ones filtered afterwards."""
    budget = budget or SearchBudget()
    budget.check_size(g.n)
    meter = _Meter(budget)
    small = [p for p in patterns if p.k <= 3]
    large = [p for p in patterns if p.k > 3]
    roots = range(g.n) if root is None else [root]
    for r in roots:
        for m in _layouts_rooted(g, r, range(g.n), small, meter):
            t = TreeLayout(tuple(m[v] for v in range(g.n)))
            if large and any(_has_chain(g, t, p) for p in large):
                continue
            yield t


def _has_chain(g: Graph, t: TreeLayout, p: Pattern) -> bool:
    for v in range(g.n):
        path = t.root_path(v)
        for idx in itertools.combinations(range(len(path) - 1), p.k - 1):
            if p.matches(g, [path[i] for i in idx] + [v]):
                return True
    return False


def all_tree_layouts(
    g: Graph, root: int | None = None, budget: SearchBudget | None = None
) -> list[TreeLayout]:
    """Every tree-layout of ``g`` (optionally with a fixed root), sorted."""
    out = list(iter_tree_layouts(g, root, (), budget))
    return sorted(out, key=_layout_key)


def indifference_tree_layouts(
    g: Graph, root: int | None = None, budget: SearchBudget | None = None
) -> list[TreeLayout]:
    out = list(iter_tree_layouts(g, root, builtin_pattern_set("proper"), budget))
    assert all(is_indifference(g, t) for t in out)
    return sorted(out, key=_layout_key)


def _layout_key(t: TreeLayout):
    return [-1 if p is None else p for p in t.parent]


def pattern_free_tree_layout(
    g: Graph, patterns: Sequence[Pattern], root: int | None = None, budget: SearchBudget | None = None
) -> TreeLayout | None:
    return next(iter_tree_layouts(g, root, patterns, budget), None)


def brute_recognize(g: Graph, budget: SearchBudget | None = None) -> bool:
    """True iff some tree-layout of ``g`` avoids both proper patterns."""
    t = pattern_free_tree_layout(g, builtin_pattern_set("proper"), None, budget)
    if t is None:
        return False
    assert is_indifference(g, t)
    return True


def brute_feasible_roots(g: Graph, budget: SearchBudget | None = None) -> list[int]:
    proper = builtin_pattern_set("proper")
    return [x for x in range(g.n) if pattern_free_tree_layout(g, proper, x, budget) is not None]


def brute_isomorphic(g1: Graph, g2: Graph, budget: SearchBudget | None = None) -> list[int] | None:
    """First bijection (lexicographic) mapping edges onto edges, or None."""
    budget = budget or SearchBudget()
    budget.check_size(max(g1.n, g2.n))
    if g1.n != g2.n or g1.m != g2.m:
        return None
    if sorted(map(len, g1.adj)) != sorted(map(len, g2.adj)):
        return None
    meter = _Meter(budget)
    for perm in itertools.permutations(range(g1.n)):
        meter.tick()
        if all(len(g1.adj[v]) == len(g2.adj[perm[v]]) for v in range(g1.n)) and all(
            perm[v] in g2.adj[perm[u]] for u, v in g1.edges()
        ):
            return list(perm)
    return None


def is_isomorphism(g1: Graph, g2: Graph, f: Sequence[int]) -> bool:
    if g1.n != g2.n or sorted(f) != list(range(g1.n)) or g1.m != g2.m:
        return False
    return all(f[v] in g2.adj[f[u]] for u, v in g1.edges())


def _consecutive(perm: Sequence, s) -> bool:
    idx = sorted(perm.index(x) for x in s)
    return not idx or idx[-1] - idx[0] + 1 == len(idx)


def brute_permutation_sets(ground: Iterable, families: Sequence[Sequence[Iterable]], max_size: int = 7):
    """``(convex, nested_convex)`` for the sets of ``families`` by direct check.

    ``convex`` keeps every set consecutive; ``nested_convex`` also puts
    ``Y - Z`` before ``Z`` for every ``Z`` strictly inside ``Y`` in one family.
    """
    ground = sorted(set(ground), key=lambda x: (not isinstance(x, int), str(x) if not isinstance(x, int) else x))
    if len(ground) > max_size:
        raise BudgetExceeded(f"ground set larger than {max_size}")
    fams = [[frozenset(s) for s in f if s] for f in families]
    sets = {s for f in fams for s in f}
    convex, nested = [], []
    for perm in itertools.permutations(ground):
        if not all(_consecutive(perm, s) for s in sets):
            continue
        convex.append(perm)
        pos = {x: i for i, x in enumerate(perm)}
        ok = True
        for f in fams:
            for y in f:
                for z in f:
                    if z < y and max(pos[a] for a in y - z) > min(pos[a] for a in z):
                        ok = False
        if ok:
            nested.append(perm)
    return convex, nested


def pruefer_rooted_trees(n: int) -> Iterator[tuple[int | None, ...]]:
    """Parent arrays of all rooted labelled trees on ``n`` nodes via Pruefer codes."""
    if n == 1:
        yield (None,)
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        adj = _pruefer_decode(list(seq), n)
        for r in range(n):
            parent: list[int | None] = [None] * n
            stack, seen = [r], {r}
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        parent[w] = u
                        stack.append(w)
            yield tuple(parent)


def _pruefer_decode(seq: list[int], n: int) -> list[list[int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    adj: list[list[int]] = [[] for _ in range(n)]
    for x in seq:
        leaf = next(i for i in range(n) if degree[i] == 1)
        adj[leaf].append(x)
        adj[x].append(leaf)
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    adj[u].append(v)
    adj[v].append(u)
    return adj


def tree_layouts_by_pruefer(g: Graph, root: int | None = None) -> list[TreeLayout]:
    """Slow cross-check: filter every rooted labelled tree by the tree-layout property."""
    out = []
    for parent in pruefer_rooted_trees(g.n):
        t = TreeLayout(parent)
        if root is not None and t.root != root:
            continue
        if all(t.comparable(u, v) for u, v in g.edges()):
            out.append(t)
    return sorted(out, key=_layout_key)


def random_tree_layout_pair(rng: random.Random, n: int, p: float) -> tuple[Graph, TreeLayout]:
    """Random rooted tree plus a random graph whose edges join comparable nodes."""
    labels = list(range(n))
    rng.shuffle(labels)
    parent: list[int | None] = [None] * n
    for i in range(1, n):
        parent[labels[i]] = labels[rng.randrange(i)]
    t = TreeLayout(tuple(parent))
    edges = []
    for v in range(n):
        for u in t.ancestors(v):
            if rng.random() < p:
                edges.append((u, v))
    return Graph.from_edges(n, edges), t


def has_induced_long_cycle(g: Graph) -> bool:
    """Brute force: some vertex subset of size >= 4 induces a cycle."""
    for k in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            s = set(sub)
            if all(len(g.adj[v] & s) == 2 for v in sub):
                if len(connected_components(g, set(range(g.n)) - s)) == 1:
                    return True
    return False
