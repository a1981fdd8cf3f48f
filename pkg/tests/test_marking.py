import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from delpezzo4.lattice import DP3, DP4, PicClass, canonical_class, enumerate_lines, fiber_class, intersect, section_lines
from delpezzo4.marking import (
    FULL,
    CBMarking,
    DP4Marking,
    MarkingError,
    Parity,
    all_cb_markings,
    all_dp4_markings,
    cb_action,
    configuration_automorphisms,
    construction_StoX,
    construction_XtoS,
    dp4_action,
    incidence_graph,
    induced_action_cb,
    induced_action_dp4,
    meeting_set,
    parity_type,
    preserves_form,
    unique_section,
    verify_pullback_equivariance,
)
from delpezzo4.weyl import WeylElement, enumerate_group, normal_subgroup_N, parse_element
from tests.conftest import cb_markings, dp4_markings, elements

STD = DP4Marking.standard()


def cls(*coords):
    return PicClass(DP4 if len(coords) == 6 else DP3, coords)


def test_standard_marking():
    assert STD.Q == cls(2, -1, -1, -1, -1, -1)
    assert STD.L[0] == cls(0, 1, 0, 0, 0, 0)
    assert STD.half_sum == cls(1, 0, 0, 0, 0, 0)


def test_marking_validation():
    with pytest.raises(MarkingError):
        DP4Marking(STD.Q, STD.L[:4])
    with pytest.raises(MarkingError):
        DP4Marking(STD.L[0], STD.L)
    with pytest.raises(MarkingError):
        CBMarking(construction_StoX(STD).pairs[:4])
    pairs = construction_StoX(STD).pairs
    with pytest.raises(MarkingError):
        CBMarking((pairs[0], pairs[0]) + pairs[2:])


def test_marking_counts():
    assert len(all_dp4_markings()) == 16 * 120
    assert len(set(all_cb_markings())) == 120 * 32


def test_permutation_rule():
    w = parse_element("(12)")
    a = induced_action_dp4(STD, w)
    assert STD.Q.apply(a) == STD.Q
    assert STD.L[0].apply(a) == STD.L[1] and STD.L[1].apply(a) == STD.L[0]


def test_sign_rule():
    a = induced_action_dp4(STD, WeylElement.iota({2, 3, 4, 5}))
    assert STD.Q.apply(a) == cls(0, 1, 0, 0, 0, 0)


def test_identity_acts_trivially():
    assert np.array_equal(induced_action_dp4(STD, WeylElement.identity()), np.eye(6, dtype=int))


@given(dp4_markings, elements, elements)
def test_dp4_action_is_homomorphism(m, a, b):
    act = dp4_action(m)
    assert np.array_equal(act.matrix(a * b), act.matrix(a) @ act.matrix(b))


@given(dp4_markings, elements)
def test_dp4_action_preserves_form_and_k(m, w):
    act = dp4_action(m)
    assert preserves_form(act.matrix(w), DP4)
    assert canonical_class(DP4).apply(act.matrix(w)) == canonical_class(DP4)


@given(dp4_markings)
def test_generator_rules_hold_for_any_marking(m):
    act = dp4_action(m)
    for sigma in (parse_element("(12)"), parse_element("(12345)")):
        assert act.apply(sigma, m.Q) == m.Q
        assert all(act.apply(sigma, m.L[i]) == m.L[sigma(i + 1) - 1] for i in range(5))
    for i in range(1, 6):
        assert act.apply(WeylElement.iota(FULL - {i}), m.Q) == m.L[i - 1]


def test_action_is_faithful():
    act = dp4_action(STD)
    perms = {act.permutation(w) for w in enumerate_group(5)}
    assert len(perms) == 1920


def test_normal_subgroup_free_transitive():
    act = dp4_action(STD)
    for line in range(16):
        assert sorted(act.permutation(n)[line] for n in normal_subgroup_N(5)) == list(range(16))


def test_automorphisms_against_networkx():
    adj = incidence_graph(DP4)
    g = nx.Graph([(i, j) for i, a in enumerate(adj) for j in a])
    matcher = nx.algorithms.isomorphism.GraphMatcher(g, g)
    oracle = {tuple(m[i] for i in range(16)) for m in matcher.isomorphisms_iter()}
    assert len(oracle) == 1920
    assert set(configuration_automorphisms()) == oracle


def test_automorphisms_equal_marked_image():
    act = dp4_action(STD)
    assert set(configuration_automorphisms()) == {act.permutation(w) for w in enumerate_group(5)}


@given(dp4_markings, elements)
def test_element_of_permutation_inverts(m, w):
    act = dp4_action(m)
    assert act.element_of_permutation(act.permutation(w)) == w


def test_element_of_permutation_rejects_non_automorphism():
    act = dp4_action(STD)
    perm = list(range(16))
    perm[0], perm[1] = perm[1], perm[0]
    with pytest.raises(ValueError):
        act.element_of_permutation(perm)


# -- conic bundle side --------------------------------------------------------------


def test_cb_sign_rule():
    x = construction_StoX(STD)
    a = induced_action_cb(x, WeylElement.iota({1, 2}))
    assert x.E[0].apply(a) == x.F[0] and x.E[1].apply(a) == x.F[1]
    assert all(x.E[i].apply(a) == x.E[i] for i in (2, 3, 4))


@given(cb_markings, elements, elements)
def test_cb_action_is_homomorphism_fixing_k_and_f(m, a, b):
    act = cb_action(m)
    assert np.array_equal(act.matrix(a * b), act.matrix(a) @ act.matrix(b))
    assert preserves_form(act.matrix(a), DP3)
    assert canonical_class(DP3).apply(act.matrix(a)) == canonical_class(DP3)
    assert fiber_class().apply(act.matrix(a)) == fiber_class()


@given(cb_markings, elements)
def test_cb_section_image_is_the_unique_matching_class(m, w):
    act = cb_action(m)
    images = [act.apply(w, e) for e in m.E]
    for c in section_lines():
        matches = [
            d for d in section_lines() if all(intersect(d, wi) == intersect(c, e) for wi, e in zip(images, m.E))
        ]
        assert matches == [act.apply(w, c)]


@given(cb_markings)
def test_equivalent_markings_give_same_action(m):
    a, b = cb_action(m), cb_action(m.equivalent())
    for w in enumerate_group(5)[::41]:
        assert np.array_equal(a.matrix(w), b.matrix(w))


def test_parity_examples():
    x = construction_StoX(STD)
    assert x.E[0] == cls(1, -1, 0, 0, 0, 0, -1)
    assert parity_type(x) is Parity.ODD
    assert meeting_set(cls(0, 1, 0, 0, 0, 0, 0), x) == {1}
    assert parity_type(x.equivalent()) is Parity.EVEN


@given(cb_markings)
def test_exactly_one_of_equivalent_pair_is_odd(m):
    assert {parity_type(m), parity_type(m.equivalent())} == {Parity.ODD, Parity.EVEN}


def test_unique_section_examples():
    x = construction_StoX(STD)
    assert unique_section(x, {1}) == cls(0, 1, 0, 0, 0, 0, 0)
    assert unique_section(x, FULL) == cls(2, -1, -1, -1, -1, -1, 0)
    with pytest.raises(MarkingError):
        unique_section(x.equivalent(), {1})
    with pytest.raises(ValueError):
        unique_section(x, {1, 2})


def test_construction_examples():
    x = construction_StoX(STD)
    for i, e in enumerate(x.E):
        assert all(intersect(e, e2) == 0 for e2 in x.E[i + 1 :])
    assert construction_XtoS(x) == STD
    assert construction_XtoS(x.equivalent()) == STD
    assert construction_XtoS(x).Q == cls(2, -1, -1, -1, -1, -1)


@given(dp4_markings)
def test_roundtrip(m):
    assert construction_XtoS(construction_StoX(m)) == m


@given(cb_markings)
def test_reverse_roundtrip_up_to_equivalence(m):
    assert construction_StoX(construction_XtoS(m)).is_equivalent_to(m)


def test_pullback_equivariance():
    x = construction_StoX(STD)
    assert verify_pullback_equivariance(STD, x)
    swapped = CBMarking((x.pairs[1], x.pairs[0]) + x.pairs[2:])
    assert not verify_pullback_equivariance(STD, swapped)
    assert verify_pullback_equivariance(STD, swapped, [WeylElement.identity()])


@given(dp4_markings)
def test_pullback_equivariance_for_random_markings(m):
    assert verify_pullback_equivariance(m, construction_StoX(m), enumerate_group(5)[::23])


@given(dp4_markings, cb_markings)
def test_json_roundtrip(m, x):
    assert DP4Marking.from_json(m.to_json()) == m
    assert CBMarking.from_json(x.to_json()) == x


def test_lines_labelled_by_even_subsets():
    assert set(STD.labels) == set(enumerate_lines(DP4))
