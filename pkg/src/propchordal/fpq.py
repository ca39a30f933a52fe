"""PQ- and FPQ-trees: construction from consecutivity constraints, freezing, factors.

Leaves carry arbitrary sortable labels (vertex ids in practice). Trees are
kept in a normal form: every internal node has at least two children, except
the single-element tree ``Q(leaf)``; a node with exactly two children is
typed ``Q`` unless it is frozen (``F``).
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

KINDS = ("L", "F", "P", "Q")


class NotNested(ValueError):
    """A family of a nested collection is not a chain under inclusion."""


@dataclass(frozen=True)
class Node:
    kind: str
    children: tuple["Node", ...] = ()
    leaf: Any = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if (self.kind == "L") != (not self.children):
            raise ValueError("leaves have no children and internal nodes have some")

    def leaves(self) -> list:
        if self.kind == "L":
            return [self.leaf]
        return [x for c in self.children for x in c.leaves()]


def leaf(x) -> Node:
    return Node("L", (), x)


def _sortkey(x):
    return (0, x) if isinstance(x, (int, float)) else (1, str(x))


def _internal(kind: str, children: Sequence[Node]) -> Node:
    if len(children) == 1:
        return children[0]
    if len(children) == 2 and kind == "P":
        kind = "Q"
    return Node(kind, tuple(children))


@dataclass(frozen=True)
class FPQTree:
    root: Node

    def __post_init__(self):
        labels = self.root.leaves()
        if len(set(labels)) != len(labels):
            raise ValueError("leaf labels must be distinct")
        for u in self.nodes:
            if u.kind == "P" and len(u.children) < 3:
                raise ValueError("P-nodes need at least three children")
            if u.kind in "FQ" and len(u.children) < 2 and u is not self.root:
                raise ValueError("F- and Q-nodes need at least two children")
        if self.root.kind == "L":
            raise ValueError("wrap a single leaf as Q(leaf)")
        if len(self.root.children) == 1 and (self.root.kind != "Q" or self.root.children[0].kind != "L"):
            raise ValueError("only the single-element tree may have a one-child root")

    @classmethod
    def single(cls, x) -> "FPQTree":
        return cls(Node("Q", (leaf(x),)))

    @classmethod
    def wrap(cls, node: Node) -> "FPQTree":
        return cls(Node("Q", (node,)) if node.kind == "L" else node)

    @cached_property
    def nodes(self) -> tuple[Node, ...]:
        """Nodes in preorder; a node's index here is its id."""
        out = []
        stack = [self.root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(u.children))
        return tuple(out)

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        par: list[int | None] = [None] * len(self.nodes)
        for i in range(len(self.nodes)):
            for j in self.child_ids[i]:
                par[j] = i
        return tuple(par)

    @cached_property
    def child_ids(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for i, u in enumerate(self.nodes):
            ids, j = [], i + 1
            for c in u.children:
                ids.append(j)
                j += _subtree_size(c)
            out.append(tuple(ids))
        return tuple(out)

    @cached_property
    def leaf_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(u.leaves()) for u in self.nodes)

    @cached_property
    def leaf_id(self) -> dict:
        return {u.leaf: i for i, u in enumerate(self.nodes) if u.kind == "L"}

    @property
    def ground(self) -> list:
        return self.root.leaves()

    def lca(self, xs: Iterable) -> int:
        """Node id of the least common ancestor of the leaves ``xs``."""
        xs = set(xs)
        if not xs:
            raise ValueError("lca of an empty set")
        best = 0
        for i, s in enumerate(self.leaf_sets):
            if xs <= s and len(s) <= len(self.leaf_sets[best]):
                best = i
        return best

    def interval(self, node_id: int, xs: Iterable) -> tuple[int, int] | None:
        """1-based ``(h, j)`` with ``xs`` the union of children ``h..j`` of the node."""
        xs = set(xs)
        kids = self.child_ids[node_id]
        hit = [i for i, c in enumerate(kids) if self.leaf_sets[c] & xs]
        if not hit or hit != list(range(hit[0], hit[-1] + 1)):
            return None
        if set().union(*(self.leaf_sets[kids[i]] for i in hit)) != xs:
            return None
        return hit[0] + 1, hit[-1] + 1

    def sexpr(self, name: Callable[[Any], str] = str) -> str:
        def rec(u: Node) -> str:
            if u.kind == "L":
                return name(u.leaf)
            return "(" + u.kind + " " + " ".join(rec(c) for c in u.children) + ")"

        return rec(self.root)

    def to_json(self) -> Any:
        def rec(u: Node):
            if u.kind == "L":
                return {"leaf": u.leaf}
            return {"kind": u.kind, "children": [rec(c) for c in u.children]}

        return rec(self.root)

    @classmethod
    def from_json(cls, data: Any) -> "FPQTree":
        def rec(d) -> Node:
            if "leaf" in d:
                return leaf(d["leaf"])
            return Node(d["kind"], tuple(rec(c) for c in d["children"]))

        return cls(rec(data))

    def __str__(self) -> str:
        return self.sexpr()


def _subtree_size(u: Node) -> int:
    return 1 + sum(_subtree_size(c) for c in u.children)


def parse_sexpr(text: str, atom: Callable[[str], Hashable] | None = None) -> FPQTree:
    """Parse ``(F a (Q b c d e))``. Atoms made of digits become ints by default."""
    if atom is None:
        atom = lambda s: int(s) if s.isdigit() else s  # noqa: E731
    tokens = re.findall(r"\(|\)|[^\s()]+", text)
    pos = 0

    def rec() -> Node:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of S-expression")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise ValueError("unexpected ')'")
        if tok != "(":
            return leaf(atom(tok))
        if pos >= len(tokens) or tokens[pos] not in ("F", "P", "Q"):
            raise ValueError("expected node kind after '('")
        kind = tokens[pos]
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(rec())
        if pos >= len(tokens):
            raise ValueError("missing ')'")
        pos += 1
        return Node(kind, tuple(kids))

    node = rec()
    if pos != len(tokens):
        raise ValueError("trailing tokens after S-expression")
    return FPQTree(node)


# ------------------------------------------------------------------ frontiers


def _count(u: Node) -> int:
    if u.kind == "L":
        return 1
    own = {"F": 1, "Q": 2 if len(u.children) > 1 else 1, "P": math.factorial(len(u.children))}[u.kind]
    return own * math.prod(_count(c) for c in u.children)


def _frontiers(u: Node) -> list[tuple]:
    if u.kind == "L":
        return [(u.leaf,)]
    per_child = [_frontiers(c) for c in u.children]
    k = len(u.children)
    if u.kind == "F":
        orders = [tuple(range(k))]
    elif u.kind == "Q":
        orders = [tuple(range(k)), tuple(reversed(range(k)))]
    else:
        orders = list(itertools.permutations(range(k)))
    out = set()
    for order in orders:
        for combo in itertools.product(*(per_child[i] for i in order)):
            out.add(tuple(x for part in combo for x in part))
    return list(out)


def frontier_set(t: FPQTree, limit: int = 100_000) -> list[tuple]:
    """Every permutation represented by ``t``, sorted."""
    if _count(t.root) > limit:
        raise ValueError(f"frontier set exceeds limit {limit}")
    return sorted(_frontiers(t.root), key=lambda p: [_sortkey(x) for x in p])


# ------------------------------------------------------------ convex PQ-trees


def _overlap(a: frozenset, b: frozenset) -> bool:
    return bool(a & b) and not a <= b and not b <= a


def _overlap_components(sets: list[frozenset]) -> list[list[frozenset]]:
    parent = list(range(len(sets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(sets)), 2):
        if _overlap(sets[i], sets[j]):
            parent[find(i)] = find(j)
    groups: dict[int, list[frozenset]] = {}
    for i, s in enumerate(sets):
        groups.setdefault(find(i), []).append(s)
    return list(groups.values())


def _order_classes(comp: list[frozenset]) -> list[frozenset] | None:
    """Linear order of the atoms of an overlap-connected family, or None."""
    pending = sorted(comp, key=lambda s: (-len(s), sorted(map(_sortkey, s))))
    first = pending.pop(0)
    placed = [first]
    classes: list[set] = [set(first)]
    union = set(first)
    while pending:
        idx = next(i for i, s in enumerate(pending) if any(_overlap(s, t) for t in placed))
        s = pending.pop(idx)
        placed.append(s)
        a, new = s & union, s - union
        touched = [i for i, c in enumerate(classes) if c & a]
        lo, hi = touched[0], touched[-1]
        if touched != list(range(lo, hi + 1)):
            return None
        if any(not classes[i] <= a for i in range(lo + 1, hi)):
            return None
        m = len(classes)
        full_lo, full_hi = classes[lo] <= a, classes[hi] <= a
        if not new:
            if lo == hi:
                raise AssertionError("a set overlapping a placed set cannot sit inside one class")
            if not full_hi:
                classes[hi : hi + 1] = [classes[hi] & a, classes[hi] - a]
            if not full_lo:
                classes[lo : lo + 1] = [classes[lo] - a, classes[lo] & a]
            continue
        if m == 1:
            c = classes[0]
            classes = ([c - a] if c - a else []) + [c & a, set(new)]
        elif hi == m - 1 and (lo == hi or full_hi):
            if not full_lo:
                classes[lo : lo + 1] = [classes[lo] - a, classes[lo] & a]
            classes.append(set(new))
        elif lo == 0 and (lo == hi or full_lo):
            if not full_hi:
                classes[hi : hi + 1] = [classes[hi] & a, classes[hi] - a]
            classes.insert(0, set(new))
        else:
            return None
        union |= new
    for s in comp:
        hit = [i for i, c in enumerate(classes) if c & s]
        if hit != list(range(hit[0], hit[-1] + 1)) or any(not classes[i] <= s for i in hit):
            return None
    return [frozenset(c) for c in classes]


def _build(ground: frozenset, sets: list[frozenset]) -> Node | None:
    if len(ground) == 1:
        return leaf(next(iter(ground)))
    useful = sorted(
        {s for s in sets if 1 < len(s) < len(ground)}, key=lambda s: (len(s), sorted(map(_sortkey, s)))
    )

    def sub(part: frozenset) -> Node | None:
        return _build(part, [s for s in useful if s <= part])

    if not useful:
        return _internal("P", [leaf(x) for x in sorted(ground, key=_sortkey)])
    comps = _overlap_components(useful)
    for comp in comps:
        if frozenset().union(*comp) == ground:
            classes = _order_classes(comp)
            if classes is None:
                return None
            kids = [sub(c) for c in classes]
            if any(k is None for k in kids):
                return None
            if _sortkey(min(kids[0].leaves(), key=_sortkey)) > _sortkey(min(kids[-1].leaves(), key=_sortkey)):
                kids.reverse()
            return Node("Q", tuple(kids))
    unions = {frozenset().union(*comp) for comp in comps}
    maximal = [u for u in unions if not any(u < w for w in unions)]
    covered = frozenset().union(*maximal)
    parts = maximal + [frozenset([x]) for x in ground - covered]
    parts.sort(key=lambda p: _sortkey(min(p, key=_sortkey)))
    kids = [sub(p) for p in parts]
    if any(k is None for k in kids):
        return None
    return _internal("P", kids)


def convex_pq(ground: Iterable, constraints: Iterable[Iterable]) -> FPQTree | None:
    """PQ-tree of all orders of ``ground`` keeping each constraint consecutive."""
    ground = frozenset(ground)
    if not ground:
        raise ValueError("empty ground set")
    sets = [frozenset(s) for s in constraints]
    for s in sets:
        if not s <= ground:
            raise ValueError(f"constraint {sorted(s, key=_sortkey)} not inside the ground set")
    node = _build(ground, sets)
    return None if node is None else FPQTree.wrap(node)


# --------------------------------------------------------- nested collections


@dataclass(frozen=True)
class NestedCollection:
    ground: frozenset
    families: tuple[tuple[frozenset, ...], ...]

    @classmethod
    def make(cls, ground: Iterable, families: Iterable[Iterable[Iterable]]) -> "NestedCollection":
        fams = []
        for fam in families:
            uniq = sorted({frozenset(s) for s in fam if s}, key=lambda s: (-len(s), sorted(map(_sortkey, s))))
            fams.append(tuple(uniq))
        return cls(frozenset(ground), tuple(fams))

    def is_nested(self) -> bool:
        return all(all(b <= a for a, b in zip(f, f[1:])) for f in self.families)

    @property
    def sets(self) -> list[frozenset]:
        return sorted({s for f in self.families for s in f}, key=lambda s: (len(s), sorted(map(_sortkey, s))))


class _M:
    """Mutable node used while freezing."""

    __slots__ = ("kind", "children", "leaf", "parent")

    def __init__(self, node: Node, parent=None):
        self.kind, self.leaf, self.parent = node.kind, node.leaf, parent
        self.children = [_M(c, self) for c in node.children]

    def freeze(self) -> Node:
        return Node(self.kind, tuple(c.freeze() for c in self.children), self.leaf)


def nested_convex_fpq(c: NestedCollection) -> FPQTree | None:
    """FPQ-tree of the orders keeping every set consecutive and, inside each
    chain ``Z < Y``, placing ``Y - Z`` before ``Z``. ``None`` if there is none."""
    if not c.is_nested():
        raise NotNested("every family must be a chain under inclusion")
    pairs = [(y, z) for fam in c.families for y, z in itertools.combinations(fam, 2) if z < y]
    extra = [y - z for y, z in pairs]
    t = convex_pq(c.ground, c.sets + extra)
    if t is None:
        return None
    root = _M(t.root)
    leaves: dict = {}
    stack = [root]
    while stack:
        u = stack.pop()
        if u.kind == "L":
            leaves[u.leaf] = u
        stack.extend(u.children)

    def path_up(u):
        out = []
        while u is not None:
            out.append(u)
            u = u.parent
        return out

    for y, z in pairs:
        for p in y - z:
            up_p = path_up(leaves[p])
            for q in z:
                up_q = path_up(leaves[q])
                on_q = {id(u) for u in up_q}
                i = next(i for i, u in enumerate(up_p) if id(u) in on_q)
                w = up_p[i]
                cp = up_p[i - 1]
                cq = up_q[[id(u) for u in up_q].index(id(w)) - 1]
                ip, iq = w.children.index(cp), w.children.index(cq)
                if w.kind == "P":
                    return None
                if w.kind == "Q":
                    if ip > iq:
                        w.children.reverse()
                    w.kind = "F"
                elif ip > iq:
                    return None
    return FPQTree(root.freeze())


def factors(t: FPQTree) -> list[frozenset]:
    """Sets consecutive in every order of ``t``, by size then sorted content."""
    out = set()
    for i, u in enumerate(t.nodes):
        out.add(t.leaf_sets[i])
        if u.kind in "FQ":
            kids = [t.leaf_sets[j] for j in t.child_ids[i]]
            for a in range(len(kids)):
                acc = kids[a]
                for b in range(a + 1, len(kids)):
                    acc = acc | kids[b]
                    out.add(acc)
    return sorted(out, key=lambda s: (len(s), sorted(map(_sortkey, s))))


def fpq_equivalent(t1: FPQTree, t2: FPQTree) -> bool:
    """True iff the two trees are related by permuting P-nodes and reversing Q-nodes."""
    if sorted(t1.ground, key=_sortkey) != sorted(t2.ground, key=_sortkey):
        raise ValueError("trees are over different ground sets")
    from .isomorphism import tree_code

    return tree_code(t1, labelled=True) == tree_code(t2, labelled=True)


def sortkey(x):
    """Ordering used for mixed leaf labels."""
    return _sortkey(x)


def dumps(t: FPQTree) -> str:
    return json.dumps(t.to_json(), sort_keys=True)
