#!/usr/bin/env python3
"""Count disagreements between the four indifference checks on random pairs.

Splits the count by connectivity of the graph. Example:

    python3 scripts/characterization_sweep.py --pairs 20000 --max-n 8
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from propchordal.graph import is_connected
from propchordal.oracle import random_tree_layout_pair
from propchordal.treelayout import INDIFFERENCE_METHODS, is_indifference


@dataclass(frozen=True)
class SweepConfig:
    pairs: int = 20_000
    max_n: int = 8
    densities: tuple[float, ...] = (0.3, 0.6, 0.9)
    seed: int = 0


def sweep(cfg: SweepConfig) -> Counter:
    rng = random.Random(cfg.seed)
    tally = Counter()
    for _ in range(cfg.pairs):
        g, t = random_tree_layout_pair(rng, rng.randint(1, cfg.max_n), rng.choice(cfg.densities))
        verdicts = tuple(is_indifference(g, t, m) for m in INDIFFERENCE_METHODS)
        kind = "connected" if is_connected(g) else "disconnected"
        tally[kind, "total"] += 1
        if len(set(verdicts)) > 1:
            tally[kind, "disagree"] += 1
            tally[kind, verdicts] += 1
    return tally


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=SweepConfig.pairs)
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args()
    tally = sweep(SweepConfig(pairs=a.pairs, max_n=a.max_n, seed=a.seed))
    print("methods:", ", ".join(INDIFFERENCE_METHODS))
    for kind in ("connected", "disconnected"):
        print(f"{kind}: {tally[kind, 'disagree']}/{tally[kind, 'total']} disagree")
        for key, count in sorted(tally.items(), key=str):
            if key[0] == kind and isinstance(key[1], tuple):
                print(f"  verdicts {key[1]}: {count}")


if __name__ == "__main__":
    main()
