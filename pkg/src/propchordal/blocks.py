"""S-maximal vertices, S-blocks and the block tree search."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fpq import NestedCollection
from .graph import Graph, components_within, connected_components, is_connected, is_universal_to


class BlockTreeError(RuntimeError):
    """The deepest block adjacent to a new block was not unique."""


@dataclass(frozen=True)
class BlockTree:
    """Blocks in attach order; block 0 is ``{root}``."""

    blocks: tuple[frozenset[int], ...]
    parent: tuple[int | None, ...]

    @property
    def root_vertex(self) -> int:
        return next(iter(self.blocks[0]))

    def depth(self, b: int) -> int:
        d = 0
        while self.parent[b] is not None:
            b = self.parent[b]
            d += 1
        return d

    def ancestors(self, b: int) -> list[int]:
        out = []
        while self.parent[b] is not None:
            b = self.parent[b]
            out.append(b)
        return out

    def children(self, b: int) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p == b]

    def block_of(self) -> dict[int, int]:
        return {v: i for i, blk in enumerate(self.blocks) for v in blk}

    def to_json(self) -> str:
        return json.dumps(
            {"blocks": [sorted(b) for b in self.blocks], "parent": list(self.parent)}, sort_keys=True
        )

    @classmethod
    def from_json(cls, text: str) -> "BlockTree":
        d = json.loads(text)
        return cls(tuple(frozenset(b) for b in d["blocks"]), tuple(d["parent"]))


def s_maximal_vertices(g: Graph, s: frozenset[int], c: frozenset[int]) -> frozenset[int]:
    s, c = frozenset(s), frozenset(c)
    if c not in connected_components(g, s):
        raise ValueError("c must be a connected component of g - s")
    traces = {y: g.adj[y] & s for y in c}
    return frozenset(x for x in c if all(traces[y] <= traces[x] for y in c))


def s_block(g: Graph, s: frozenset[int], c: frozenset[int]) -> frozenset[int] | None:
    """All S-maximal vertices of ``c`` universal to ``N(S) & c``; None if there are none."""
    maximal = s_maximal_vertices(g, s, c)
    boundary = frozenset(y for y in c if g.adj[y] & frozenset(s))
    block = frozenset(x for x in maximal if is_universal_to(g, x, boundary))
    return block or None


def block_tree(g: Graph, x: int, reverse_components: bool = False) -> BlockTree | None:
    """Grow blocks from ``{x}``; None when some component has no S-block.

    Components are taken by ascending minimum vertex (descending when
    ``reverse_components``).
    """
    if not is_connected(g):
        raise ValueError("block tree requires a connected graph")
    blocks: list[frozenset[int]] = [frozenset([x])]
    parent: list[int | None] = [None]
    depth = [0]
    s = {x}
    while len(s) < g.n:
        comps = connected_components(g, s)
        comp = comps[-1] if reverse_components else comps[0]
        blk = s_block(g, frozenset(s), comp)
        if blk is None:
            return None
        nbrs = frozenset().union(*(g.adj[v] for v in blk))
        touching = [i for i, b in enumerate(blocks) if nbrs & b]
        deepest = max(depth[i] for i in touching)
        top = [i for i in touching if depth[i] == deepest]
        if len(top) != 1:
            raise BlockTreeError(f"blocks {top} tie as deepest neighbours of {sorted(blk)}")
        blocks.append(blk)
        parent.append(top[0])
        depth.append(deepest + 1)
        s |= blk
    return BlockTree(tuple(blocks), tuple(parent))


def nested_collection_of_block(g: Graph, bt: BlockTree, b: int) -> NestedCollection:
    """Neighbourhood traces on block ``b``, one family per component hanging below it."""
    above = frozenset().union(*(bt.blocks[a] for a in bt.ancestors(b)))
    block = bt.blocks[b]
    region = next(c for c in connected_components(g, above) if c & block)
    families = []
    for comp in components_within(g, region - block):
        families.append([g.adj[y] & block for y in sorted(comp)])
    return NestedCollection.make(block, families)
