"""Markings of the quartic del Pezzo surface and of the cubic conic bundle.

A marking of the quartic surface S is a line Q together with an ordering
L1..L5 of the five lines meeting it.  It fixes a W(D5)-action on the lines:
permutations fix Q and permute the L_i, and iota_{klmn} sends Q to L_i for
{i,k,l,m,n} = {1..5}.  Writing iota_I for the sign element of an even subset
I, every line is iota_I(Q) for exactly one I, so the lines of S are labelled
by even subsets: Q <-> {}, L_i <-> {1..5} - {i}, and the line meeting L_i and
L_j other than Q <-> {i, j}.  In these labels iota_S * p sends I to
S ^ p(I).  The action on Pic(S) is the linear extension of this rule,
checked to be integral.

A marking of the conic bundle on the cubic surface X (the blow-up of S at a
point on no line, fibred by the conics through e6) orders the five
degenerate fibres and picks a component E_i in each, F_i = F - E_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from ._graphs import automorphisms
from ._linalg import BasisChange
from .lattice import (
    DP3,
    DP4,
    FibrationRole,
    LatticeTag,
    PicClass,
    blowdown_pushforward,
    blowup_pullback,
    canonical_class,
    classify_wrt_fibration,
    degenerate_fibers,
    enumerate_lines,
    fiber_class,
    gram_matrix,
    intersect,
    is_line,
    line_index,
    pullback_matrix,
    section_lines,
)
from .weyl import WeylElement, enumerate_group

FULL = frozenset(range(1, 6))


class MarkingError(ValueError):
    pass


# -- marking types ---------------------------------------------------------------


@dataclass(frozen=True)
class DP4Marking:
    Q: PicClass
    L: tuple[PicClass, ...]

    def __post_init__(self):
        if len(self.L) != 5:
            raise MarkingError("a marking has exactly five lines")
        for d in (self.Q,) + tuple(self.L):
            if d.tag != DP4 or not is_line(d):
                raise MarkingError(f"{d} is not a line on the quartic surface")
        for i, li in enumerate(self.L):
            if intersect(li, self.Q) != 1:
                raise MarkingError(f"L{i + 1} = {li} does not meet Q")
            for lj in self.L[i + 1 :]:
                if intersect(li, lj) != 0:
                    raise MarkingError("marking lines must be pairwise disjoint")

    @classmethod
    def standard(cls) -> "DP4Marking":
        """Q = 2e0 - e1 - ... - e5 and L_i = e_i."""
        q = PicClass(DP4, (2, -1, -1, -1, -1, -1))
        ls = tuple(PicClass(DP4, tuple(int(j == i) for j in range(6))) for i in range(1, 6))
        return cls(q, ls)

    @cached_property
    def half_sum(self) -> PicClass:
        """(Q + L1 + ... + L5) / 2, the line class of the contraction of the L_i."""
        total = self.Q
        for li in self.L:
            total = total + li
        if any(c % 2 for c in total.coords):
            raise MarkingError("Q + sum L_i is not divisible by 2")
        return PicClass(DP4, tuple(c // 2 for c in total.coords))

    def line_of_subset(self, subset: Iterable[int]) -> PicClass:
        s = frozenset(subset)
        if len(s) % 2 or not s <= FULL:
            raise ValueError(f"{sorted(s)} is not an even subset of 1..5")
        if not s:
            return self.Q
        if len(s) == 4:
            (i,) = FULL - s
            return self.L[i - 1]
        i, j = sorted(s)
        return self.half_sum - self.L[i - 1] - self.L[j - 1]

    @cached_property
    def labels(self) -> dict[PicClass, frozenset[int]]:
        """Each line with its even-subset label."""
        from .weyl import even_subsets

        return {self.line_of_subset(s): s for s in even_subsets(5)}

    def to_json(self) -> dict:
        return {"Q": list(self.Q.coords), "L": [list(x.coords) for x in self.L]}

    @classmethod
    def from_json(cls, data: dict) -> "DP4Marking":
        return cls(PicClass(DP4, tuple(data["Q"])), tuple(PicClass(DP4, tuple(x)) for x in data["L"]))


@dataclass(frozen=True)
class CBMarking:
    """Ordered degenerate fibres with a chosen component: pairs[i] = (E_{i+1}, F_{i+1})."""

    pairs: tuple[tuple[PicClass, PicClass], ...]

    def __post_init__(self):
        if len(self.pairs) != 5:
            raise MarkingError("the cubic conic bundle has five degenerate fibres")
        fibre = fiber_class()
        seen = set()
        for e, f in self.pairs:
            for d in (e, f):
                if d.tag != DP3 or not is_line(d) or classify_wrt_fibration(d) is not FibrationRole.COMPONENT:
                    raise MarkingError(f"{d} is not a fibre component")
            if e + f != fibre:
                raise MarkingError(f"{e} and {f} do not form a degenerate fibre")
            key = frozenset((e, f))
            if key in seen:
                raise MarkingError("degenerate fibres must be pairwise distinct")
            seen.add(key)

    @classmethod
    def from_components(cls, components: Sequence[PicClass]) -> "CBMarking":
        f = fiber_class()
        return cls(tuple((e, f - e) for e in components))

    @property
    def E(self) -> tuple[PicClass, ...]:
        return tuple(p[0] for p in self.pairs)

    @property
    def F(self) -> tuple[PicClass, ...]:
        return tuple(p[1] for p in self.pairs)

    def equivalent(self) -> "CBMarking":
        """The marking with every E_i and F_i swapped."""
        return CBMarking(tuple((f, e) for e, f in self.pairs))

    def is_equivalent_to(self, other: "CBMarking") -> bool:
        return other == self or other == self.equivalent()

    def to_json(self) -> dict:
        return {"pairs": [[list(e.coords), list(f.coords)] for e, f in self.pairs]}

    @classmethod
    def from_json(cls, data: dict) -> "CBMarking":
        return cls(tuple((PicClass(DP3, tuple(e)), PicClass(DP3, tuple(f))) for e, f in data["pairs"]))


@lru_cache(maxsize=None)
def all_dp4_markings() -> tuple[DP4Marking, ...]:
    """The 16 * 120 markings of the standard quartic lattice."""
    lines = enumerate_lines(DP4)
    out = []
    for q in lines:
        meeting = [d for d in lines if intersect(d, q) == 1]
        for order in itertools.permutations(meeting):
            out.append(DP4Marking(q, tuple(order)))
    return tuple(out)


@lru_cache(maxsize=None)
def all_cb_markings() -> tuple[CBMarking, ...]:
    """The 5! * 2^5 markings of the standard cubic conic bundle."""
    fibres = degenerate_fibers()
    out = []
    for order in itertools.permutations(fibres):
        for choice in itertools.product((0, 1), repeat=5):
            out.append(CBMarking(tuple((p[c], p[1 - c]) for p, c in zip(order, choice))))
    return tuple(out)


# -- induced actions ---------------------------------------------------------------


class MarkedAction:
    """The W(D5)-action on a Picard lattice fixed by a marking.

    ``matrix(w)`` is the integer matrix on coordinates, ``permutation(w)`` the
    induced permutation of ``lines`` (indices into enumerate_lines(tag)).
    Results are memoised per element.
    """

    def __init__(self, tag: LatticeTag, basis: Sequence[PicClass], image_rule, marking=None, decoder=None):
        self.tag = tag
        self._decoder = decoder
        self.marking = marking
        self.lines = enumerate_lines(tag)
        self._index = line_index(tag)
        self._basis = BasisChange([b.coords for b in basis])
        self._image_rule = image_rule
        self._matrices: dict[WeylElement, np.ndarray] = {}
        self._perms: dict[WeylElement, tuple[int, ...]] = {}
        self._line_vectors = np.array([d.coords for d in self.lines], dtype=np.int64).T

    def matrix(self, w: WeylElement) -> np.ndarray:
        m = self._matrices.get(w)
        if m is None:
            m = self._basis.extend([c.coords for c in self._image_rule(w)])
            self._matrices[w] = m
        return m

    def apply(self, w: WeylElement, d: PicClass) -> PicClass:
        return d.apply(self.matrix(w))

    def permutation(self, w: WeylElement) -> tuple[int, ...]:
        p = self._perms.get(w)
        if p is None:
            images = (self.matrix(w) @ self._line_vectors).T
            try:
                p = tuple(self._index[tuple(int(x) for x in row)] for row in images)
            except KeyError as exc:
                raise AssertionError(f"{w} does not permute the lines") from exc
            self._perms[w] = p
        return p

    def line_of(self, d: PicClass) -> int:
        return self._index[d.coords]

    def act_on_line(self, w: WeylElement, d: PicClass) -> PicClass:
        return self.lines[self.permutation(w)[self.line_of(d)]]

    def element_of_permutation(self, perm: Sequence[int]) -> WeylElement:
        """The unique group element inducing ``perm`` on the lines (the action is faithful)."""
        perm = tuple(perm)
        if self._decoder is not None:
            w = self._decoder(perm)
            if w is None or self.permutation(w) != perm:
                raise ValueError("permutation is not induced by any element of W(D5)")
            return w
        table = self.__dict__.get("_inverse_table")
        if table is None:
            table = {self.permutation(w): w for w in enumerate_group(5)}
            self._inverse_table = table
        try:
            return table[tuple(perm)]
        except KeyError:
            raise ValueError("permutation is not induced by any element of W(D5)") from None


@lru_cache(maxsize=4096)
def dp4_action(m: DP4Marking) -> MarkedAction:
    basis = (m.Q,) + tuple(m.L)
    subsets = [frozenset()] + [FULL - {i} for i in range(1, 6)]

    def rule(w: WeylElement):
        return [m.line_of_subset(w.signs ^ frozenset(w(i) for i in s)) for s in subsets]

    lines = enumerate_lines(DP4)
    index = line_index(DP4)

    def decode(perm):
        # Q goes to the line labelled by the sign set, L_i to the one labelled S ^ ([5] - {p(i)})
        try:
            signs = m.labels[lines[perm[index[m.Q.coords]]]]
            images = []
            for li in m.L:
                (j,) = FULL - (m.labels[lines[perm[index[li.coords]]]] ^ signs)
                images.append(j)
            return WeylElement(5, signs, tuple(images))
        except ValueError:
            return None

    return MarkedAction(DP4, basis, rule, m, decode)


@lru_cache(maxsize=4096)
def cb_action(m: CBMarking) -> MarkedAction:
    k = canonical_class(DP3)
    f = fiber_class()
    basis = (k, f) + m.E

    def rule(w: WeylElement):
        images = [k, f]
        for j in range(1, 6):
            target = w(j)
            images.append(m.F[target - 1] if target in w.signs else m.E[target - 1])
        return images

    return MarkedAction(DP3, basis, rule, m)


def induced_action_dp4(m: DP4Marking, w: WeylElement) -> np.ndarray:
    return dp4_action(m).matrix(w)


def induced_action_cb(m: CBMarking, w: WeylElement) -> np.ndarray:
    return cb_action(m).matrix(w)


def preserves_form(matrix: np.ndarray, tag: LatticeTag) -> bool:
    g = gram_matrix(tag)
    return bool(np.array_equal(matrix.T @ g @ matrix, g))


# -- parity and sections -------------------------------------------------------------


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


def meeting_set(section: PicClass, m: CBMarking) -> frozenset[int]:
    """Indices i with section . E_i = 1."""
    return frozenset(i for i, e in enumerate(m.E, start=1) if intersect(section, e) == 1)


@lru_cache(maxsize=8192)
def _sections_by_meeting_set(m: CBMarking) -> dict[frozenset[int], tuple[PicClass, ...]]:
    table: dict[frozenset[int], list[PicClass]] = {}
    for a in section_lines():
        table.setdefault(meeting_set(a, m), []).append(a)
    return {k: tuple(v) for k, v in table.items()}


def parity_type(m: CBMarking) -> Parity:
    parities = {len(s) % 2 for s in _sections_by_meeting_set(m)}
    assert len(parities) == 1, "sections disagree on parity"
    return Parity.ODD if parities.pop() else Parity.EVEN


def odd_representative(m: CBMarking) -> CBMarking:
    return m if parity_type(m) is Parity.ODD else m.equivalent()


def unique_section(m: CBMarking, subset: Iterable[int]) -> PicClass:
    """The (-1)-section meeting exactly the E_i with i in ``subset``."""
    s = frozenset(subset)
    if parity_type(m) is not Parity.ODD:
        raise MarkingError("unique sections are indexed by odd subsets only for an odd marking")
    if len(s) % 2 == 0 or not s <= FULL:
        raise ValueError(f"{sorted(s)} is not an odd subset of 1..5")
    hits = _sections_by_meeting_set(m).get(s, ())
    assert len(hits) == 1, f"expected one section for {sorted(s)}, found {len(hits)}"
    return hits[0]


# -- the two constructions ---------------------------------------------------------


def construction_StoX(m: DP4Marking) -> CBMarking:
    """E_i = -K_X - f*Q - f*L_i, the residual line in the plane of f*Q and f*L_i."""
    minus_k = -canonical_class(DP3)
    q = blowup_pullback(m.Q)
    es = [minus_k - q - blowup_pullback(li) for li in m.L]
    for i, e in enumerate(es):
        assert classify_wrt_fibration(e) is FibrationRole.COMPONENT
        for e2 in es[i + 1 :]:
            assert intersect(e, e2) == 0
    return CBMarking.from_components(es)


def construction_XtoS(m: CBMarking) -> DP4Marking:
    odd = odd_representative(m)
    ls = tuple(blowdown_pushforward(unique_section(odd, {i})) for i in range(1, 6))
    q = blowdown_pushforward(unique_section(odd, FULL))
    return DP4Marking(q, ls)


def verify_pullback_equivariance(
    m_s: DP4Marking, m_x: CBMarking, elements: Iterable[WeylElement] | None = None
) -> bool:
    """Whether f* intertwines the two marked actions on all given elements (default: all of W(D5))."""
    p = pullback_matrix(DP4)
    act_s, act_x = dp4_action(m_s), cb_action(m_x)
    for w in enumerate_group(5) if elements is None else elements:
        if not np.array_equal(p @ act_s.matrix(w), act_x.matrix(w) @ p):
            return False
    return True


# -- the configuration of lines ----------------------------------------------------


def incidence_graph(tag: LatticeTag = DP4) -> list[frozenset[int]]:
    """Adjacency sets of the lines, joined when they meet (D.D' = 1)."""
    lines = enumerate_lines(tag)
    return [frozenset(j for j, b in enumerate(lines) if intersect(a, b) == 1) for a in lines]


@lru_cache(maxsize=None)
def configuration_automorphisms() -> tuple[tuple[int, ...], ...]:
    """Automorphisms of the 16-line incidence graph, found by backtracking."""
    return tuple(sorted(automorphisms(incidence_graph(DP4))))
