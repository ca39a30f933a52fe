"""Ordered patterns and their occurrences in layouts and tree-layouts."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .graph import Graph

if TYPE_CHECKING:
    from .treelayout import TreeLayout


@dataclass(frozen=True)
class Pattern:
    """Template on positions ``1..k``; every pair is either an edge or a non-edge."""

    k: int
    edges: frozenset[tuple[int, int]]
    nonedges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not 2 <= self.k <= 4:
            raise ValueError("pattern size must be between 2 and 4")
        pairs = {(i, j) for i in range(1, self.k + 1) for j in range(i + 1, self.k + 1)}
        if self.edges & self.nonedges:
            raise ValueError("a pair cannot be both an edge and a non-edge")
        if self.edges | self.nonedges != pairs:
            raise ValueError("every pair of positions must be constrained")

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse ``<~12,13,23>``; ``~`` marks a non-edge."""
        body = text.strip()
        if not (body.startswith("<") and body.endswith(">")):
            raise ValueError(f"pattern must be bracketed: {text!r}")
        edges, nonedges = set(), set()
        for item in body[1:-1].split(","):
            m = re.fullmatch(r"\s*(~?)([1-4])([1-4])\s*", item)
            if not m:
                raise ValueError(f"bad pair {item!r} in {text!r}")
            i, j = int(m.group(2)), int(m.group(3))
            if i >= j:
                raise ValueError(f"pair {item!r} must be increasing")
            (nonedges if m.group(1) else edges).add((i, j))
        k = max(j for _, j in edges | nonedges)
        return cls(k, frozenset(edges), frozenset(nonedges))

    def __str__(self) -> str:
        items = sorted((p, p in self.nonedges) for p in self.edges | self.nonedges)
        return "<" + ",".join(("~" if neg else "") + f"{i}{j}" for (i, j), neg in items) + ">"

    def reversed(self) -> "Pattern":
        def flip(p):
            i, j = p
            return (self.k + 1 - j, self.k + 1 - i)

        return Pattern(self.k, frozenset(map(flip, self.edges)), frozenset(map(flip, self.nonedges)))

    def matches(self, g: Graph, chain: Sequence[int]) -> bool:
        """True if the vertices ``chain`` (in pattern order) realise this pattern."""
        for i, j in self.edges:
            if chain[j - 1] not in g.adj[chain[i - 1]]:
                return False
        for i, j in self.nonedges:
            if chain[j - 1] in g.adj[chain[i - 1]]:
                return False
        return True


P = Pattern.parse

_SETS = {
    "chordal": ["<~12,13,23>"],
    "int": ["<~12,13,23>", "<~12,13,~23>"],
    "proper": ["<~12,13,23>", "<12,13,~23>"],
    "indifference": ["<~12,13,23>", "<~12,13,~23>", "<12,13,~23>"],
    "cograph": ["<12,~13,23>", "<~12,13,~23>", "<~12,13,~14,23,24,~34>", "<12,~13,14,~23,~24,34>"],
    "bip": ["<12,13,23>", "<12,~13,23>"],
    "forest": ["<12,13,23>", "<~12,13,23>"],
    "cocomp": ["<~12,13,~23>"],
    "comp": ["<12,~13,23>"],
    "trivper": ["<~12,13,23>", "<12,~13,23>"],
}

PATTERN_SET_NAMES = tuple(_SETS)


def builtin_pattern_set(name: str) -> tuple[Pattern, ...]:
    key = name.lower()
    if key not in _SETS:
        raise ValueError(f"unknown pattern set {name!r}; known: {', '.join(_SETS)}")
    return tuple(P(s) for s in _SETS[key])


def layout_occurrences(g: Graph, layout: Sequence[int], p: Pattern) -> list[tuple[int, ...]]:
    """All increasing tuples of ``layout`` matching ``p``, in lexicographic position order."""
    return [
        tuple(layout[i] for i in idx)
        for idx in itertools.combinations(range(len(layout)), p.k)
        if p.matches(g, [layout[i] for i in idx])
    ]


def treelayout_occurrences(g: Graph, t: "TreeLayout", p: Pattern) -> list[tuple[int, ...]]:
    """All ancestor chains ``x_1 < ... < x_k`` of ``t`` matching ``p``.

    Chains are reported in lexicographic order of their depth sequence,
    grouped by the deepest vertex in ascending id.
    """
    out = []
    for v in range(g.n):
        path = t.root_path(v)  # root first, v last
        for idx in itertools.combinations(range(len(path) - 1), p.k - 1):
            chain = [path[i] for i in idx] + [v]
            if p.matches(g, chain):
                out.append(tuple(chain))
    return out


def layout_is_free(g: Graph, layout: Sequence[int], ps: Sequence[Pattern]) -> bool:
    return all(not layout_occurrences(g, layout, p) for p in ps)


def exists_pattern_free_layout(
    g: Graph, ps: Sequence[Pattern], max_vertices: int = 10
) -> list[int] | None:
    """Exhaustive search for a layout of ``g`` avoiding every pattern in ``ps``.

    Backtracks over prefixes; each new vertex is checked only against the
    occurrences that end at it.
    """
    if g.n > max_vertices:
        raise ValueError(f"exhaustive layout search limited to {max_vertices} vertices")
    if g.n == 0:
        return []
    prefix: list[int] = []
    used = [False] * g.n

    def ok_last() -> bool:
        v = prefix[-1]
        for p in ps:
            if p.k > len(prefix):
                continue
            for idx in itertools.combinations(range(len(prefix) - 1), p.k - 1):
                if p.matches(g, [prefix[i] for i in idx] + [v]):
                    return False
        return True

    def rec() -> bool:
        if len(prefix) == g.n:
            return True
        for v in range(g.n):
            if used[v]:
                continue
            prefix.append(v)
            used[v] = True
            if ok_last() and rec():
                return True
            prefix.pop()
            used[v] = False
        return False

    return list(prefix) if rec() else None
