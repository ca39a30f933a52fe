#!/usr/bin/env python3
"""Compare the canonical hierarchies of the shared-skeleton pair at root x."""

from propchordal.graph import generate
from propchordal.hierarchy import enumerate_realizations
from propchordal.isomorphism import code_of, isomorphic
from propchordal.oracle import indifference_tree_layouts
from propchordal.recognition import attempt_root
from propchordal.treelayout import is_indifference


def main() -> None:
    g, gp = generate("shared_skeleton_g"), generate("shared_skeleton_h")
    hg = attempt_root(g, g.vertex("x")).hierarchy
    hp = attempt_root(gp, gp.vertex("x")).hierarchy
    for name, graph, h in (("G", g, hg), ("H", gp, hp)):
        print(f"{name}: trees {[t.sexpr(graph.name) for t in h.trees]}")
        print(f"  decorated code   {code_of(h)}")
        print(f"  undecorated code {code_of(h, decorated=False)}")
        print(f"  indifference tree-layouts at x: {len(indifference_tree_layouts(graph, graph.vertex('x')))}")
    real = enumerate_realizations(hg)
    theirs = indifference_tree_layouts(gp, gp.vertex("x"))
    print(f"realizations of G's hierarchy: {len(real)}")
    print(f"  of which indifference for H: {sum(is_indifference(gp, t) for t in real)}")
    print(f"H layouts covered by G's hierarchy: {sum(t in real for t in theirs)}/{len(theirs)}")
    print(f"isomorphic: {isomorphic(g, gp) is not None}")


if __name__ == "__main__":
    main()
