"""Survey a catalogue of subgroups of W(D5): orbit structure, invariant rank,
Delta orbit type, |H^1(G, N)| and the number of distinct class invariants
among the twisted forms."""

import argparse
import csv
import sys
from dataclasses import dataclass, field

from delpezzo4.galois import (
    GroupAction,
    classify_surface,
    delta_gset,
    h1,
    h1_size,
    invariant_rank,
    orbits_on_lines,
    twist_action,
)
from delpezzo4.marking import DP4Marking, dp4_action
from delpezzo4.weyl import generate_subgroup, parse_generators

DEFAULT_CATALOG = [
    "",
    "i1234",
    "(12)",
    "(12)(34)",
    "(123)",
    "(12345)",
    "(12345),i1234",
    "(12),(12345)",
    "i1234,i1235",
    "i1234,i1235,i1245,i1345",
    "(12),(12345),i12",
]


@dataclass
class SurveyConfig:
    catalog: list[str] = field(default_factory=lambda: list(DEFAULT_CATALOG))
    # twisted forms are only enumerated when H^1 has at most this many classes
    max_forms: int = 256


def survey(cfg: SurveyConfig):
    action = dp4_action(DP4Marking.standard())
    for gens in cfg.catalog:
        ga = GroupAction(generate_subgroup(parse_generators(gens), 5))
        size = h1_size(ga)
        forms = None
        if size <= cfg.max_forms:
            forms = len({classify_surface(twist_action(ga, c)) for c in h1(ga)})
        yield {
            "gens": gens or "1",
            "order": len(ga.group),
            "orbits": "+".join(str(len(o)) for o in sorted(orbits_on_lines(ga, action), key=len, reverse=True)),
            "rank": invariant_rank(ga, action),
            "delta": "+".join(map(str, delta_gset(ga).orbit_type)),
            "h1": size,
            "distinct_invariants": "" if forms is None else forms,
        }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("gens", nargs="*", help="generator strings; default is a built-in catalogue")
    ap.add_argument("--max-forms", type=int, default=256)
    a = ap.parse_args()
    cfg = SurveyConfig(a.gens or list(DEFAULT_CATALOG), a.max_forms)
    writer = None
    for row in survey(cfg):
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
