"""The eleven acceptance criteria, each an exact check.

Each test records one PASS/FAIL line, printed in the pytest terminal
summary.  Running this file directly executes all criteria and prints the
same lines.
"""

import itertools
import random
import time

from delpezzo4.galois import (
    NOT_RIGID,
    RIGID,
    SUPERRIGID,
    Cocycle,
    GroupAction,
    LinkFlags,
    NotMinimalError,
    classify_surface,
    enumerate_links,
    h1,
    to_mask,
    torsors_equivalent,
    twist_action,
)
from delpezzo4.lattice import DP1, DP2, DP3, DP4, enumerate_lines, intersect, section_lines
from delpezzo4.marking import (
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
    verify_pullback_equivariance,
)
from delpezzo4.transform import (
    BertiniMove,
    GeiserMove,
    chain_compose,
    is_equivariant_bijection,
    nu_map,
    random_chain,
    theta_tilde,
    uniqueness_check,
    verify_wd5_equivariance,
)
from delpezzo4.weyl import WeylElement, enumerate_group, generate_subgroup, normal_subgroup_N, parse_generators, product

_RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, text: str) -> None:
    _RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    print(_RESULTS[n])
    assert ok, text


def summary_lines() -> list[str]:
    return [_RESULTS[k] for k in sorted(_RESULTS)]


def test_criterion_01_group_order_and_relation():
    order = len(enumerate_group(5))
    rel = product(WeylElement.iota(s) for s in ({1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}))
    record(1, order == 1920 and rel.is_identity, f"|W(D5)| = {order}, product of the five 4-index sign elements is {rel}")


def test_criterion_02_line_counts():
    counts = [len(enumerate_lines(t)) for t in (DP4, DP3, DP2, DP1)]
    lines = enumerate_lines(DP4)
    meets = {sum(intersect(a, b) == 1 for b in lines) for a in lines}
    record(2, counts == [16, 27, 56, 240] and meets == {5}, f"lines {counts}, dp4 neighbours per line {sorted(meets)}")


def test_criterion_03_configuration_automorphisms():
    configuration_automorphisms.cache_clear()
    start = time.perf_counter()
    auts = set(configuration_automorphisms())
    elapsed = time.perf_counter() - start
    act = dp4_action(DP4Marking.standard())
    image = {act.permutation(w) for w in enumerate_group(5)}
    ok = len(auts) == 1920 and auts == image and elapsed < 1.0
    record(3, ok, f"|Aut| = {len(auts)}, equals marked image: {auts == image}, search {elapsed:.2f}s")


def test_criterion_04_free_transitive():
    ns = normal_subgroup_N(5)
    bad = 0
    for m in all_dp4_markings():
        act = dp4_action(m)
        perms = [act.permutation(n) for n in ns]
        for line in range(16):
            if sorted(p[line] for p in perms) != list(range(16)):
                bad += 1
    record(4, bad == 0, f"N free and transitive under all {len(all_dp4_markings())} markings ({bad} failures)")


def test_criterion_05_section_formula():
    sections = section_lines()
    checked = bad = 0
    parities = set()
    for m in all_cb_markings():
        parities.add(parity_type(m))
        meets = [meeting_set(a, m) for a in sections]
        for (a1, s1), (a2, s2) in itertools.product(zip(sections, meets), repeat=2):
            lhs = 2 * intersect(a1, a2)
            rhs = intersect(a1, a1) + intersect(a2, a2) + len(s1) + len(s2) - 2 * len(s1 & s2)
            checked += 1
            bad += lhs != rhs
    ok = bad == 0 and parities == {Parity.ODD, Parity.EVEN}
    record(5, ok, f"{checked} section pairs over both parities, {bad} failures")


def test_criterion_06_parity_and_odd_subsets():
    odd_subsets = [frozenset(c) for r in (1, 3, 5) for c in itertools.combinations(range(1, 6), r)]
    bad = 0
    for m in all_cb_markings():
        parities = {len(meeting_set(a, m)) % 2 for a in section_lines()}
        if len(parities) != 1 or {parity_type(m), parity_type(m.equivalent())} != {Parity.ODD, Parity.EVEN}:
            bad += 1
            continue
        rep = odd_representative(m)
        if {unique_section(rep, s) for s in odd_subsets} != set(section_lines()):
            bad += 1
    record(6, bad == 0, f"parity shared and 16 odd subsets biject with sections for all {len(all_cb_markings())} markings")


def test_criterion_07_construction_roundtrip():
    fwd = sum(construction_XtoS(construction_StoX(m)) != m for m in all_dp4_markings())
    back = sum(not construction_StoX(construction_XtoS(x)).is_equivalent_to(x) for x in all_cb_markings())
    record(7, fwd == 0 and back == 0, f"XtoS o StoX failures {fwd}/1920, StoX o XtoS failures {back}/3840")


def test_criterion_08_equivariance_stack():
    rng = random.Random(8)
    markings = all_dp4_markings()
    cbs = all_cb_markings()
    sources = [DP4Marking.standard()] + [rng.choice(markings) for _ in range(3)]
    group = enumerate_group(5)
    ok_pull = all(verify_pullback_equivariance(m, construction_StoX(m), group) for m in sources)
    ok_theta = ok_unique = ok_nu = True
    for m in sources:
        x = construction_StoX(m)
        for y in (x, x.equivalent(), rng.choice(cbs), rng.choice(cbs)):
            t = theta_tilde(x, y)
            ok_theta &= verify_wd5_equivariance(t, full=True)
            cert = uniqueness_check(x, y)
            ok_unique &= cert.survivors == 1 and cert.ok
            target = construction_XtoS(y)
            nu = nu_map(m, target, t)
            ok_nu &= is_equivariant_bijection(nu.perm, dp4_action(m), dp4_action(target), group)
            ok_nu &= [nu(li) for li in m.L] == list(target.L)
    ok = ok_pull and ok_theta and ok_unique and ok_nu
    record(8, ok, f"f* {ok_pull}, theta {ok_theta}, unique survivor {ok_unique}, nu {ok_nu} over all 1920 elements")


def test_criterion_09_cohomology():
    trivial = len(h1(generate_subgroup([])))
    g = generate_subgroup(parse_generators("i1234"))
    gamma = g.generators[0]
    split = GroupAction(g, {g.identity: g.identity, gamma: WeylElement.identity()})
    order2 = len(h1(split))
    twist = {x: tuple(range(1, 6)) for x in g.elements}
    cocycles = [Cocycle(g, {g.identity: 0, gamma: to_mask(FULL - {i})}, twist) for i in range(1, 6)]
    distinct = all(not torsors_equivalent(a, b) for a, b in itertools.combinations(cocycles, 2))
    invariants = [classify_surface(twist_action(split, c)) for c in cocycles]
    ok = trivial == 1 and order2 == 16 and distinct and len(set(invariants)) == 5
    record(9, ok, f"|H1| trivial {trivial}, order 2 {order2}, five example classes distinct {distinct}, invariants {len(set(invariants))}")


def test_criterion_10_rigidity_verdicts():
    act = dp4_action(DP4Marking.standard())
    ok = True
    for gens in ("i1234,i1235,i1245,i1345", "(12),(12345),i12", "i1234,i1235,i1245,i1345,(12345)"):
        ga = GroupAction(generate_subgroup(parse_generators(gens)))
        none = enumerate_links(ga, act, LinkFlags())
        ok &= none.links == () and none.verdict == SUPERRIGID
        point = enumerate_links(ga, act, LinkFlags(point=True))
        ok &= [(x.type, x.target_kind) for x in point.links] == [("BlowupI", "cubic conic bundle")]
        ok &= point.verdict == NOT_RIGID
        inv = enumerate_links(ga, act, LinkFlags(deg2=True, deg3=True))
        ok &= [x.type for x in inv.links] == ["GeiserII", "BertiniII"] and inv.verdict == RIGID
        for move in (GeiserMove(), BertiniMove()):
            r = chain_compose([move], group=ga)
            ok &= r.equivariant and r.invariant_preserved
    try:
        enumerate_links(generate_subgroup(parse_generators("(12)")), act, LinkFlags())
        ok = False
    except NotMinimalError:
        pass
    record(10, ok, "superrigid / one type I link / involution links with unchanged class invariant")


def test_criterion_11_chain_invariance():
    rng = random.Random(11)
    groups = [
        GroupAction(generate_subgroup(parse_generators(t)))
        for t in ("i1234,i1235,i1245,i1345", "(12),(12345),i12", "i1234", "(12)(34),i13", "(12345),i1234", "")
    ]
    start = time.perf_counter()
    bad = 0
    for i in range(100):
        moves = random_chain(rng, 5)
        r = chain_compose(moves, DP4Marking.standard(), groups[i % len(groups)])
        bad += not (r.equivariant and r.invariant_preserved and len(moves) <= 5)
    elapsed = time.perf_counter() - start
    record(11, bad == 0 and elapsed < 30, f"100 random chains, {bad} failures, {elapsed:.1f}s")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
