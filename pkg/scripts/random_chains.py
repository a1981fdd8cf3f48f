"""Compose random chains of links under several group actions and check that
each composite is equivariant and preserves the class invariant."""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from delpezzo4.galois import GroupAction
from delpezzo4.marking import DP4Marking
from delpezzo4.transform import chain_compose, random_chain
from delpezzo4.weyl import generate_subgroup, parse_generators


@dataclass
class ChainConfig:
    count: int = 100
    max_length: int = 5
    seed: int = 11
    groups: list[str] = field(
        default_factory=lambda: ["i1234,i1235,i1245,i1345", "(12),(12345),i12", "i1234", "(12345),i1234", ""]
    )


def run(cfg: ChainConfig) -> tuple[int, Counter]:
    rng = random.Random(cfg.seed)
    actions = [GroupAction(generate_subgroup(parse_generators(g), 5)) for g in cfg.groups]
    failures = 0
    moves_seen: Counter = Counter()
    for i in range(cfg.count):
        moves = random_chain(rng, cfg.max_length)
        r = chain_compose(moves, DP4Marking.standard(), actions[i % len(actions)])
        moves_seen.update(r.steps)
        if not (r.equivariant and r.invariant_preserved):
            failures += 1
            print(f"chain {i} failed: {' -> '.join(r.steps)}")
    return failures, moves_seen


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-length", type=int, default=5)
    ap.add_argument("--seed", type=int, default=11)
    a = ap.parse_args()
    cfg = ChainConfig(a.count, a.max_length, a.seed)
    start = time.perf_counter()
    failures, seen = run(cfg)
    print(f"{cfg.count} chains, {failures} failures, {time.perf_counter() - start:.1f}s")
    print("moves used: " + ", ".join(f"{k}={v}" for k, v in sorted(seen.items())))
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
