"""Command-line entry point.

Exit status: 0 on success or a positive verdict, 1 on a negative verdict,
2 on bad input. Machine output goes to stdout, messages to stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path

from .graph import FIXTURES, Graph, fixture, generate, is_connected, parse_edge_list, to_edge_list
from .hierarchy import count_choices, enumerate_realizations, iter_realizations
from .isomorphism import code_of, isomorphic
from .oracle import (
    BudgetExceeded,
    SearchBudget,
    all_tree_layouts,
    brute_feasible_roots,
    brute_isomorphic,
    brute_recognize,
    indifference_tree_layouts,
)
from .patterns import PATTERN_SET_NAMES, builtin_pattern_set, treelayout_occurrences
from .recognition import attempt_root, recognize
from .treelayout import TreeLayout, is_indifference, is_tree_layout

ENUMERATION_CAP = 100_000


class InputError(Exception):
    pass


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    p = Path(arg)
    if p.exists():
        return p.read_text()
    raise InputError(f"no such file: {arg}")


def load_graph(arg: str) -> Graph:
    """A path, ``-`` for stdin, or the name of a shipped fixture."""
    if arg != "-" and not Path(arg).exists() and arg in FIXTURES:
        return fixture(arg)
    return parse_edge_list(_read(arg))


def _vertex(g: Graph, label: str) -> int:
    try:
        return g.vertex(label)
    except (KeyError, ValueError):
        raise InputError(f"unknown vertex {label!r}") from None


def _need_connected(g: Graph) -> None:
    if not is_connected(g):
        raise InputError("graph must be connected and non-empty")


def _out(text: str, dest: str | None = None) -> None:
    if dest and dest != "-":
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


def _msg(text: str) -> None:
    print(text, file=sys.stderr)


# ---------------------------------------------------------------- commands


def cmd_recognize(a) -> int:
    g = load_graph(a.file)
    _need_connected(g)
    if a.root is not None:
        x = _vertex(g, a.root)
        w = attempt_root(g, x)
        ok = not isinstance(w, str)
        roots = [x] if ok else []
        rejected = {} if ok else {x: w}
    else:
        res = recognize(g, verdict_only=a.verdict_only)
        ok, roots, rejected = res.proper_chordal, res.feasible_roots, res.rejected_roots
    report = {"verdict": "proper_chordal" if ok else "not_proper_chordal"}
    if not a.verdict_only:
        report["feasible_roots"] = [g.name(v) for v in roots]
        report["rejected_roots"] = {g.name(v): s for v, s in sorted(rejected.items())}
    _out(json.dumps(report, sort_keys=True) + "\n")
    _msg("proper chordal" if ok else "not proper chordal")
    return 0 if ok else 1


def _witness(g: Graph, root: str):
    _need_connected(g)
    x = _vertex(g, root)
    w = attempt_root(g, x)
    if isinstance(w, str):
        _msg(f"not proper chordal at root {g.name(x)} (failed at {w})")
        return None
    return w


def cmd_certify(a) -> int:
    g = load_graph(a.file)
    w = _witness(g, a.root)
    if w is None:
        return 1
    # re-validate against the pattern definition before emitting
    assert not any(treelayout_occurrences(g, w.layout, p) for p in builtin_pattern_set("proper"))
    _out(w.layout.to_json() + "\n", a.out)
    _msg(f"indifference tree-layout rooted at {g.name(w.root)}")
    return 0


def cmd_hierarchy(a) -> int:
    g = load_graph(a.file)
    w = _witness(g, a.root)
    if w is None:
        return 1
    h = w.hierarchy if a.decorated else w.hierarchy.undecorated()
    if a.code:
        _out(str(code_of(h, decorated=a.decorated)) + "\n")
    elif a.dot:
        _out(h.to_dot(g.name))
    else:
        _out(h.to_json(g.name) + "\n")
    return 0


def cmd_isomorphic(a) -> int:
    g1, g2 = load_graph(a.file1), load_graph(a.file2)
    try:
        f = isomorphic(g1, g2)
    except ValueError as exc:
        raise InputError(f"{exc}; use 'oracle isomorphic' for other graphs") from None
    if f is None:
        _out("NOT-ISOMORPHIC\n")
        return 1
    _out("".join(f"{g1.name(u)} -> {g2.name(v)}\n" for u, v in enumerate(f)))
    return 0


def cmd_generate(a) -> int:
    g = generate(a.kind, *a.args)
    _out(to_edge_list(g))
    return 0


def cmd_check_layout(a) -> int:
    g = load_graph(a.file)
    t = TreeLayout.from_json(_read(a.layout))
    if t.n != g.n:
        raise InputError(f"layout has {t.n} vertices, graph has {g.n}")
    if not is_tree_layout(g, t):
        bad = next((u, v) for u, v in g.edges() if not t.comparable(u, v))
        _msg(f"not a tree-layout: edge {g.name(bad[0])}-{g.name(bad[1])} joins incomparable nodes")
        return 1
    found = []
    for p in builtin_pattern_set(a.patterns):
        for occ in treelayout_occurrences(g, t, p):
            found.append(f"{p} at {' '.join(g.name(v) for v in occ)}")
    for line in found:
        _out(line + "\n")
    _msg(f"{a.patterns}-free" if not found else f"{len(found)} occurrence(s)")
    return 0 if not found else 1


def cmd_enumerate(a) -> int:
    g = load_graph(a.file)
    w = _witness(g, a.root)
    if w is None:
        return 1
    h = w.hierarchy
    total = count_choices(h)
    if total <= ENUMERATION_CAP:
        layouts = enumerate_realizations(h, ENUMERATION_CAP)
    else:
        layouts = list(itertools.islice(iter_realizations(h), a.limit))
    for t in layouts[: a.limit]:
        _out(t.to_json() + "\n")
    if len(layouts) > a.limit or total > ENUMERATION_CAP:
        _msg(f"output truncated at {a.limit} layouts")
    return 0


def cmd_oracle(a) -> int:
    budget = SearchBudget.from_env()
    g = load_graph(a.file)
    if a.query == "recognize":
        ok = brute_recognize(g, budget)
        _out(json.dumps({"verdict": "proper_chordal" if ok else "not_proper_chordal"}) + "\n")
        return 0 if ok else 1
    if a.query == "roots":
        _out(json.dumps([g.name(v) for v in brute_feasible_roots(g, budget)]) + "\n")
        return 0
    if a.query == "layouts":
        root = None if a.root is None else _vertex(g, a.root)
        fn = indifference_tree_layouts if a.indifference else all_tree_layouts
        for t in fn(g, root, budget):
            _out(t.to_json() + "\n")
        return 0
    if a.other is None:
        raise InputError("oracle isomorphic needs a second graph")
    g2 = load_graph(a.other)
    f = brute_isomorphic(g, g2, budget)
    if f is None:
        _out("NOT-ISOMORPHIC\n")
        return 1
    _out("".join(f"{g.name(u)} -> {g2.name(v)}\n" for u, v in enumerate(f)))
    return 0


def _selftest_lines(seed: int) -> list[tuple[str, bool, str]]:
    import networkx as nx

    from .fpq import NestedCollection, convex_pq, frontier_set, nested_convex_fpq
    from .graph import random_connected
    from .oracle import brute_permutation_sets, random_tree_layout_pair
    from .treelayout import INDIFFERENCE_METHODS

    rng = random.Random(seed)
    out = []

    bad = total = 0
    for nxg in nx.graph_atlas_g()[1:]:
        if nxg.number_of_nodes() > 5 or not nx.is_connected(nxg):
            continue
        g = Graph.from_edges(nxg.number_of_nodes(), nxg.edges())
        total += 1
        bad += recognize(g, verdict_only=True).proper_chordal != brute_recognize(g)
    out.append(("recognition vs oracle, connected n<=5", bad == 0, f"{total - bad}/{total}"))

    bad = 0
    for _ in range(100):
        ground = list(range(rng.randint(1, 5)))
        fams = [[set(rng.sample(ground, rng.randint(1, len(ground)))) for _ in range(rng.randint(1, 2))]
                for _ in range(rng.randint(0, 2))]
        convex, nested = brute_permutation_sets(ground, fams)
        t = convex_pq(ground, [s for f in fams for s in f])
        bad += (frontier_set(t) if t else []) != sorted(convex)
        c = NestedCollection.make(ground, fams)
        if c.is_nested():
            t = nested_convex_fpq(c)
            bad += (frontier_set(t) if t else []) != sorted(nested)
    out.append(("PQ machinery vs oracle, 100 families", bad == 0, f"{bad} mismatches"))

    bad = 0
    for _ in range(50):
        g = random_connected(rng, rng.randint(1, 6), 0.6)
        perm = list(range(g.n))
        rng.shuffle(perm)
        g2 = g.relabel(perm)
        if not recognize(g, verdict_only=True).proper_chordal:
            continue
        f = isomorphic(g, g2)
        bad += f is None or brute_isomorphic(g, g2) is None
    out.append(("isomorphism on relabelings", bad == 0, f"{bad} mismatches"))

    bad = 0
    for _ in range(200):
        g, t = random_tree_layout_pair(rng, rng.randint(1, 7), 0.6)
        while not is_connected(g):
            g, t = random_tree_layout_pair(rng, g.n, 0.6)
        bad += len({is_indifference(g, t, m) for m in INDIFFERENCE_METHODS}) != 1
    out.append(("indifference characterizations agree, connected", bad == 0, f"{bad} disagreements"))
    return out


def cmd_selftest(a) -> int:
    ok = True
    for name, passed, detail in _selftest_lines(a.seed):
        _out(f"{'PASS' if passed else 'FAIL'} {name} ({detail})\n")
        ok &= passed
    return 0 if ok else 1


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propchordal", description="Proper chordal graph toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", help="decide proper chordality")
    s.add_argument("file")
    s.add_argument("--root")
    s.add_argument("--verdict-only", action="store_true")
    s.set_defaults(fn=cmd_recognize)

    s = sub.add_parser("certify", help="emit an indifference tree-layout")
    s.add_argument("file")
    s.add_argument("--root", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_certify)

    s = sub.add_parser("hierarchy", help="export the canonical FPQ-hierarchy")
    s.add_argument("file")
    s.add_argument("--root", required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--code", action="store_true")
    s.add_argument("--decorated", action="store_true")
    s.set_defaults(fn=cmd_hierarchy)

    s = sub.add_parser("isomorphic", help="test isomorphism of proper chordal graphs")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(fn=cmd_isomorphic)

    s = sub.add_parser("generate", help="print a generated graph")
    s.add_argument("kind")
    s.add_argument("args", nargs="*", type=int)
    s.set_defaults(fn=cmd_generate)

    s = sub.add_parser("check-layout", help="check a tree-layout against a pattern set")
    s.add_argument("file")
    s.add_argument("layout")
    s.add_argument("--patterns", default="proper", choices=PATTERN_SET_NAMES)
    s.set_defaults(fn=cmd_check_layout)

    s = sub.add_parser("enumerate", help="list indifference tree-layouts for a root")
    s.add_argument("file")
    s.add_argument("--root", required=True)
    s.add_argument("--limit", type=int, default=1000)
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("oracle", help="brute-force references")
    s.add_argument("query", choices=["recognize", "roots", "layouts", "isomorphic"])
    s.add_argument("file")
    s.add_argument("other", nargs="?")
    s.add_argument("--root")
    s.add_argument("--indifference", action="store_true")
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("selftest", help="oracle cross-checks at reduced scale")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return a.fn(a)
    except (InputError, ValueError, OSError, BudgetExceeded) as exc:
        _msg(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
