"""Recognition of proper chordal graphs with certified witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks import block_tree
from .graph import Graph, is_connected
from .hierarchy import FPQHierarchy, HierarchyFailure, decorate, hierarchy_from_block_tree, realize
from .treelayout import TreeLayout, is_indifference, is_tree_layout

STAGES = ("no_block", "not_nested", "empty_nested_convex")


@dataclass(frozen=True)
class Witness:
    root: int
    layout: TreeLayout
    hierarchy: FPQHierarchy


@dataclass(frozen=True)
class RecognitionResult:
    witnesses: tuple[Witness, ...]
    rejected_roots: dict[int, str] = field(default_factory=dict)

    @property
    def proper_chordal(self) -> bool:
        return bool(self.witnesses)

    @property
    def verdict(self) -> str:
        return "proper_chordal" if self.witnesses else "not_proper_chordal"

    @property
    def feasible_roots(self) -> list[int]:
        return [w.root for w in self.witnesses]


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ValueError("recognition requires a connected graph with at least one vertex")


def attempt_root(g: Graph, x: int) -> Witness | str:
    """Witness rooted at ``x``, or the name of the stage that failed."""
    bt = block_tree(g, x)
    if bt is None:
        return "no_block"
    try:
        h = hierarchy_from_block_tree(g, bt)
    except HierarchyFailure as exc:
        return exc.stage
    t = realize(h)
    # every step above is proven sound, so a bad witness means a bug
    assert t.root == x and is_tree_layout(g, t) and is_indifference(g, t), "witness failed verification"
    return Witness(x, t, decorate(g, t, h))


def recognize_rooted(g: Graph, x: int) -> tuple[TreeLayout, FPQHierarchy] | None:
    _require_connected(g)
    out = attempt_root(g, x)
    return None if isinstance(out, str) else (out.layout, out.hierarchy)


def recognize(g: Graph, verdict_only: bool = False) -> RecognitionResult:
    """Try every root in ascending order; stop at the first success if ``verdict_only``."""
    _require_connected(g)
    witnesses, rejected = [], {}
    for x in range(g.n):
        out = attempt_root(g, x)
        if isinstance(out, str):
            rejected[x] = out
        else:
            witnesses.append(out)
            if verdict_only:
                break
    return RecognitionResult(tuple(witnesses), rejected)


def feasible_roots(g: Graph) -> list[int]:
    return recognize(g).feasible_roots


def is_proper_chordal(g: Graph) -> bool:
    return recognize(g, verdict_only=True).proper_chordal
