"""Named brute-force verification suites, shared by the command line and the experiment scripts."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .lattice import intersect, section_lines
from .marking import (
    FULL,
    DP4Marking,
    Parity,
    all_cb_markings,
    all_dp4_markings,
    configuration_automorphisms,
    construction_StoX,
    construction_XtoS,
    dp4_action,
    meeting_set,
    odd_representative,
    parity_type,
    unique_section,
)
from .weyl import WeylElement, enumerate_group, normal_subgroup_N, product


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    detail: dict = field(default_factory=dict)
    counterexample: object = None

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
            "counterexample": self.counterexample,
        }


def section_formula_holds(m, a1, a2) -> bool:
    """2 A1.A2 = A1^2 + A2^2 + l1 + l2 - 2r for two sections and a conic bundle marking."""
    s1, s2 = meeting_set(a1, m), meeting_set(a2, m)
    lhs = 2 * intersect(a1, a2)
    rhs = intersect(a1, a1) + intersect(a2, a2) + len(s1) + len(s2) - 2 * len(s1 & s2)
    return lhs == rhs


def suite_parity() -> SuiteResult:
    checked = 0
    for m in all_cb_markings():
        try:
            p = parity_type(m)
        except AssertionError:
            return SuiteResult("parity", False, checked, counterexample=m.to_json())
        if parity_type(m.equivalent()) == p:
            return SuiteResult("parity", False, checked, counterexample=m.to_json())
        checked += 1
    odd = sum(parity_type(m) is Parity.ODD for m in all_cb_markings())
    return SuiteResult("parity", True, checked, {"odd": odd, "even": checked - odd})


def suite_unique_section() -> SuiteResult:
    odd_subsets = [s for s in _subsets() if len(s) % 2]
    checked = 0
    for m in all_cb_markings():
        rep = odd_representative(m)
        found = {unique_section(rep, s) for s in odd_subsets}
        if found != set(section_lines()):
            return SuiteResult("unique-section", False, checked, counterexample=m.to_json())
        checked += 1
    return SuiteResult("unique-section", True, checked, {"odd_subsets": len(odd_subsets)})


def suite_aut_order() -> SuiteResult:
    auts = set(configuration_automorphisms())
    image = {dp4_action(DP4Marking.standard()).permutation(w) for w in enumerate_group(5)}
    ok = len(auts) == 1920 and auts == image
    return SuiteResult("aut-order", ok, len(auts), {"order": len(auts), "equals_marked_image": auts == image})


def suite_relation() -> SuiteResult:
    fours = [WeylElement.iota(FULL - {i}) for i in range(5, 0, -1)]
    rel = product(fours).is_identity
    order = len(enumerate_group(5))
    free = True
    for m in all_dp4_markings():
        act = dp4_action(m)
        q = act.line_of(m.Q)
        if sorted(act.permutation(n)[q] for n in normal_subgroup_N(5)) != list(range(16)):
            free = False
            break
    ok = rel and order == 1920 and free
    return SuiteResult(
        "relation", ok, order, {"product_is_identity": rel, "group_order": order, "N_free_transitive": free}
    )


def suite_theta_uniqueness(samples: int = 24, seed: int = 0) -> SuiteResult:
    from .transform import uniqueness_check

    rng = random.Random(seed)
    markings = all_cb_markings()
    for i in range(samples):
        a, b = rng.choice(markings), rng.choice(markings)
        cert = uniqueness_check(a, b)
        if not cert.ok:
            return SuiteResult("theta-uniqueness", False, i, counterexample=[a.to_json(), b.to_json()])
    return SuiteResult("theta-uniqueness", True, samples, {"seed": seed})


def suite_roundtrip() -> SuiteResult:
    checked = 0
    for m in all_dp4_markings():
        if construction_XtoS(construction_StoX(m)) != m:
            return SuiteResult("roundtrip", False, checked, counterexample=m.to_json())
        checked += 1
    for m in all_cb_markings():
        if not construction_StoX(construction_XtoS(m)).is_equivalent_to(m):
            return SuiteResult("roundtrip", False, checked, counterexample=m.to_json())
        checked += 1
    return SuiteResult("roundtrip", True, checked)


def _subsets():
    return [frozenset(c) for r in range(6) for c in itertools.combinations(range(1, 6), r)]


SUITES = {
    "parity": suite_parity,
    "unique-section": suite_unique_section,
    "aut-order": suite_aut_order,
    "relation": suite_relation,
    "theta-uniqueness": suite_theta_uniqueness,
    "roundtrip": suite_roundtrip,
}
