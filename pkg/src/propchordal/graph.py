"""Simple undirected graphs on dense vertex ids, fixture generators and edge-list I/O."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

VertexSet = frozenset


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``names`` is display metadata only; algorithms never look at it.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], names: Sequence[str] | None = None
    ) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != n:
                raise ValueError("names must have one entry per vertex")
        return cls(n, tuple(frozenset(s) for s in nbrs), names)

    @classmethod
    def from_named_edges(cls, names: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "Graph":
        index = {s: i for i, s in enumerate(names)}
        return cls.from_edges(len(names), [(index[a], index[b]) for a, b in pairs], names)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def vertex(self, label: str | int) -> int:
        """Resolve a display name or a decimal id to a vertex id."""
        if self.names and str(label) in self.names:
            return self.names.index(str(label))
        v = int(label)
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {label!r} out of range")
        return v

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Subgraph induced by ``keep``, relabelled densely in ascending order."""
        keep = sorted(set(keep))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u in keep for v in self.adj[u] if v in pos and u < v]
        names = [self.name(v) for v in keep] if self.names else None
        return Graph.from_edges(len(keep), edges, names)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])


def neighbors(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return g.adj[v]


def closed_neighbors(g: Graph, v: int) -> frozenset[int]:
    return g.adj[v] | {v}


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Components of ``g - removed``, sorted by minimum element."""
    removed = set(removed)
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def components_within(g: Graph, within: Iterable[int]) -> list[frozenset[int]]:
    """Components of the subgraph induced by ``within``, sorted by minimum element."""
    within = set(within)
    return connected_components(g, set(range(g.n)) - within)


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def is_universal_to(g: Graph, x: int, s: Iterable[int]) -> bool:
    # x itself is allowed to belong to s
    return all(y == x or y in g.adj[x] for y in s)


def is_chordal(g: Graph) -> bool:
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.is_chordal(h)


# ---------------------------------------------------------------- generators


def k_sun(k: int) -> Graph:
    """Clique x_1..x_k (ids 0..k-1) plus y_i (id k+i-1) adjacent to x_i and x_{i+1 mod k}."""
    if k < 3:
        raise ValueError("k-sun needs k >= 3")
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for i in range(k):
        edges += [(k + i, i), (k + i, (i + 1) % k)]
    names = [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}" for i in range(k)]
    return Graph.from_edges(2 * k, edges, names)


def k_fan(k: int) -> Graph:
    """Path v_1..v_{k+1} (ids 0..k) plus a universal vertex v (id k+1)."""
    if k < 1:
        raise ValueError("k-fan needs k >= 1")
    edges = [(i, i + 1) for i in range(k)] + [(i, k + 1) for i in range(k + 1)]
    names = [f"v{i + 1}" for i in range(k + 1)] + ["v"]
    return Graph.from_edges(k + 2, edges, names)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> Graph:
    """Centre 0 with n leaves."""
    if n < 0:
        raise ValueError("star needs n >= 0")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def trivially_perfect(seed: int, n: int) -> Graph:
    """Comparability graph of a random recursive tree on n nodes."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    parent = [None] + [rng.randrange(i) for i in range(1, n)]
    edges = []
    for v in range(1, n):
        u = parent[v]
        while u is not None:
            edges.append((u, v))
            u = parent[u]
    return Graph.from_edges(n, edges)


def proper_interval(seed: int, n: int, span: float | None = None) -> Graph:
    """Intersection graph of n random closed unit intervals.

    Left endpoints are uniform on ``[0, span]`` (default ``n / 2``); the
    result need not be connected.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    span = n / 2 if span is None else span
    left = [rng.uniform(0, span) for _ in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if abs(left[i] - left[j]) <= 1.0]
    return Graph.from_edges(n, edges)


def random_tree(seed: int, n: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus independent extra edges with probability p."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[rng.randrange(i)], perm[i]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


FIXTURES = ("cevenol", "several_layouts", "shared_skeleton_g", "shared_skeleton_h", "nested_traces")


def fixture(name: str) -> Graph:
    """Load a shipped edge-list fixture by name."""
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}")
    text = (Path(__file__).parent / "data" / f"{name}.txt").read_text()
    return parse_edge_list(text)


def generate(kind: str, *args: int) -> Graph:
    """Dispatch on a generator name, as used by the CLI."""
    table = {
        "k_sun": (k_sun, 1),
        "k_fan": (k_fan, 1),
        "path": (path, 1),
        "clique": (clique, 1),
        "star": (star, 1),
        "cycle": (cycle, 1),
        "trivially_perfect": (trivially_perfect, 2),
        "proper_interval": (proper_interval, 2),
        "random_tree": (random_tree, 2),
    }
    if kind in FIXTURES:
        if args:
            raise ValueError(f"{kind} takes no arguments")
        return fixture(kind)
    if kind not in table:
        raise ValueError(f"unknown generator {kind!r}")
    fn, arity = table[kind]
    if len(args) != arity:
        raise ValueError(f"{kind} takes {arity} integer argument(s)")
    return fn(*args)


# ---------------------------------------------------------------------- I/O


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    ``#`` lines are comments, except ``# names: ...`` which carries display
    names. The first data line is ``n m`` and is followed by ``m`` lines ``u v``.
    """
    names = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("names:"):
                names = body[len("names:"):].split()
            continue
        rows.append(line.split())
    if not rows:
        raise ValueError("missing header line 'n m'")
    try:
        header = [int(t) for t in rows[0]]
        body = [[int(t) for t in r] for r in rows[1:]]
    except ValueError as exc:
        raise ValueError(f"non-integer token: {exc}") from None
    if len(header) != 2:
        raise ValueError("header must be 'n m'")
    n, m = header
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for r in body:
        if len(r) != 2:
            raise ValueError(f"bad edge line {r}")
        u, v = r
        if not 0 <= u < v < n:
            raise ValueError(f"edge line must satisfy 0 <= u < v < n, got {u} {v}")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise ValueError("parallel edges")
    return Graph.from_edges(n, edges, names)


def to_edge_list(g: Graph) -> str:
    lines = []
    if g.names:
        lines.append("# names: " + " ".join(g.names))
    lines.append(f"{g.n} {g.m}")
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph) -> str:
    lines = ["graph G {"]
    for v in g.vertices:
        lines.append(f'  {v} [label="{g.name(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
