"""Elementary transformations of the cubic conic bundle, seen on Picard lattices and lines.

``theta_tilde`` builds the lattice isometry between two marked conic bundles
that sends C to C' and E_i to E'_i, where C is the section meeting all the
E_i for the odd representative.  ``nu_map`` is the bijection it induces on
the lines of the quartic surfaces underneath, and ``chain_compose`` follows
the lines of the quartic surface through a sequence of blow-ups,
transformations, blow-downs and Geiser/Bertini involutions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from ._linalg import BasisChange
from .galois import ClassInvariant, GroupAction, classify_surface
from .involutions import birational_gb_on_dp4
from .lattice import (
    DP3,
    DP4,
    PicClass,
    blowdown_pushforward,
    blowup_pullback,
    canonical_class,
    enumerate_lines,
    fiber_class,
    gram_matrix,
    line_index,
    section_lines,
)
from .marking import (
    FULL,
    CBMarking,
    DP4Marking,
    MarkingError,
    all_cb_markings,
    cb_action,
    construction_StoX,
    construction_XtoS,
    dp4_action,
    odd_representative,
    unique_section,
)
from .weyl import WeylElement, enumerate_group, generate_subgroup, normal_subgroup_N, parse_element

ALIGNED = "aligned"
CROSSED = "crossed"


class ChainError(ValueError):
    pass


# -- the isometry ----------------------------------------------------------------------


@dataclass(frozen=True)
class Isometry:
    source: CBMarking
    target: CBMarking
    matrix: np.ndarray = field(compare=False)
    pattern: str = ALIGNED

    def __post_init__(self):
        g = gram_matrix(DP3)
        assert np.array_equal(self.matrix.T @ g @ self.matrix, g), "not an isometry"
        for fixed in (canonical_class(DP3), fiber_class()):
            assert fixed.apply(self.matrix) == fixed

    def __call__(self, d: PicClass) -> PicClass:
        return d.apply(self.matrix)


def _cb_basis(m: CBMarking) -> list[PicClass]:
    return [unique_section(m, FULL), fiber_class()] + list(m.E)


def theta_tilde(mx: CBMarking, mx2: CBMarking) -> Isometry:
    """C -> C' and E_i -> E'_i on the odd representatives of both markings."""
    o1, o2 = odd_representative(mx), odd_representative(mx2)
    matrix = BasisChange([d.coords for d in _cb_basis(o1)]).extend([d.coords for d in _cb_basis(o2)])
    # the user's E_i reach E'_i exactly when both or neither marking was swapped
    pattern = ALIGNED if (o1 == mx) == (o2 == mx2) else CROSSED
    return Isometry(mx, mx2, matrix, pattern)


_WD5_GENERATORS = ("(12)", "(12345)", "i12")


def wd5_generators() -> list[WeylElement]:
    return [parse_element(t) for t in _WD5_GENERATORS]


def intertwines(matrix: np.ndarray, source_action, target_action, elements: Iterable[WeylElement]) -> bool:
    return all(
        np.array_equal(matrix @ source_action.matrix(w), target_action.matrix(w) @ matrix) for w in elements
    )


def verify_wd5_equivariance(t: Isometry, full: bool = False) -> bool:
    elements = enumerate_group(5) if full else wd5_generators()
    return intertwines(t.matrix, cb_action(t.source), cb_action(t.target), elements)


@dataclass(frozen=True)
class Candidate:
    """A map fixing K and F and sending every E_i to E'_i or to F'_i, over the rationals."""

    pattern: str
    scaled_matrix: np.ndarray = field(compare=False)
    denominator: int
    isometry: bool
    equivariant: bool
    integral: bool

    @property
    def survives(self) -> bool:
        return self.isometry and self.equivariant and self.integral


@dataclass(frozen=True)
class UniquenessCertificate:
    candidates: tuple[Candidate, ...]
    survivor_matches_theta: bool
    non_equivariant_isometries: int

    @property
    def survivors(self) -> int:
        return sum(c.survives for c in self.candidates)

    @property
    def ok(self) -> bool:
        return self.survivors == 1 and self.survivor_matches_theta and self.non_equivariant_isometries > 0


def uniqueness_check(mx: CBMarking, mx2: CBMarking) -> UniquenessCertificate:
    """Test both fibrewise patterns; exactly one may be an integral equivariant isometry.

    An equivariant map fixing K and F sends E_1 to E'_1 or F'_1, and then all
    E_i alike by symmetry, so these two patterns are the only candidates.
    Both are rational equivariant isometries; parity rules out one of them,
    which shows up as a non-integral matrix.
    """
    k, f = canonical_class(DP3), fiber_class()
    basis = BasisChange([d.coords for d in [k, f, *mx.E]])
    g = gram_matrix(DP3)
    src, tgt = cb_action(mx), cb_action(mx2)
    candidates = []
    for pattern, images in ((ALIGNED, mx2.E), (CROSSED, mx2.F)):
        scaled = np.array([d.coords for d in [k, f, *images]], dtype=np.int64).T @ basis.scaled_inverse
        den = basis.denominator
        isometry = bool(np.array_equal(scaled.T @ g @ scaled, den * den * g))
        equivariant = intertwines(scaled, src, tgt, enumerate_group(5))
        integral = not np.any(scaled % den)
        candidates.append(Candidate(pattern, scaled, den, isometry, equivariant, integral))

    theta = theta_tilde(mx, mx2)
    survivors = [c for c in candidates if c.survives]
    matches = len(survivors) == 1 and np.array_equal(survivors[0].scaled_matrix // survivors[0].denominator, theta.matrix)
    # without equivariance, theta composed with any A(w) is still an integral isometry fixing K and F
    others = set()
    for w in enumerate_group(5):
        m = theta.matrix @ src.matrix(w)
        if not intertwines(m, src, tgt, wd5_generators()):
            others.add(m.tobytes())
    return UniquenessCertificate(tuple(candidates), matches, len(others))


# -- induced bijection of lines ------------------------------------------------------------


@dataclass(frozen=True)
class LineBijection:
    """perm[i] is the index of the image of line i, both in enumerate_lines(dp4)."""

    source: DP4Marking
    target: DP4Marking
    perm: tuple[int, ...]

    def __call__(self, line: PicClass) -> PicClass:
        return enumerate_lines(DP4)[self.perm[line_index(DP4)[line.coords]]]

    def then(self, other: "LineBijection") -> "LineBijection":
        return LineBijection(self.source, other.target, tuple(other.perm[i] for i in self.perm))

    def table(self) -> list[tuple[PicClass, PicClass]]:
        lines = enumerate_lines(DP4)
        return [(lines[i], lines[j]) for i, j in enumerate(self.perm)]

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm)))


def nu_map(ms: DP4Marking, ms2: DP4Marking, t: Isometry) -> LineBijection:
    """Lines of S -> sections of X -> (via t) sections of X' -> lines of S'."""
    if construction_XtoS(t.source) != ms or construction_XtoS(t.target) != ms2:
        raise MarkingError("quartic markings do not correspond to the conic bundle markings of the isometry")
    index = line_index(DP4)
    sections = set(section_lines())
    perm = []
    for line in enumerate_lines(DP4):
        image = t(blowup_pullback(line))
        assert image in sections
        perm.append(index[blowdown_pushforward(image).coords])
    return LineBijection(ms, ms2, tuple(perm))


def is_equivariant_bijection(
    perm: Sequence[int], source_action, target_action, elements: Iterable[WeylElement], rho=None, rho2=None
) -> bool:
    """Whether perm o A(rho(w)) = A'(rho2(w)) o perm on lines for each w."""
    for w in elements:
        a = source_action.permutation(rho[w] if rho else w)
        b = target_action.permutation(rho2[w] if rho2 else w)
        if any(perm[a[i]] != b[perm[i]] for i in range(len(perm))):
            return False
    return True


def verify_torsor_iso(nu: LineBijection, group, rho=None) -> bool:
    """N- and G-equivariance of nu, G acting through rho on both sides (default: inclusion)."""
    src, tgt = dp4_action(nu.source), dp4_action(nu.target)
    gens = list(group.generators) if hasattr(group, "generators") else list(group)
    images = rho if rho is not None else {g: g for g in gens}
    return is_equivariant_bijection(nu.perm, src, tgt, normal_subgroup_N(5)) and is_equivariant_bijection(
        nu.perm, src, tgt, gens, images, images
    )


# -- chains ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class BlowupMove:
    kind = "blowup"

    def to_json(self) -> dict:
        return {"move": self.kind}


@dataclass(frozen=True)
class ThetaMove:
    target: CBMarking
    kind = "theta"

    def to_json(self) -> dict:
        return {"move": self.kind, "target": self.target.to_json()}


@dataclass(frozen=True)
class BlowdownMove:
    kind = "blowdown"

    def to_json(self) -> dict:
        return {"move": self.kind}


@dataclass(frozen=True)
class GeiserMove:
    kind = "geiser"

    def to_json(self) -> dict:
        return {"move": self.kind}


@dataclass(frozen=True)
class BertiniMove:
    kind = "bertini"

    def to_json(self) -> dict:
        return {"move": self.kind}


Move = Union[BlowupMove, ThetaMove, BlowdownMove, GeiserMove, BertiniMove]
_SIMPLE_MOVES = {m.kind: m for m in (BlowupMove, BlowdownMove, GeiserMove, BertiniMove)}
_EXPECTS = {"blowup": "dp4", "theta": "dp3", "blowdown": "dp3", "geiser": "dp4", "bertini": "dp4"}


def move_from_json(record: dict, position: int = 0) -> Move:
    if not isinstance(record, dict) or "move" not in record:
        raise ChainError(f"move {position}: expected an object with a 'move' field")
    kind = record["move"]
    if kind == "theta":
        if "target" not in record:
            raise ChainError(f"move {position}: theta needs a target marking")
        try:
            return ThetaMove(CBMarking.from_json(record["target"]))
        except (MarkingError, KeyError, TypeError, ValueError) as exc:
            raise ChainError(f"move {position}: bad theta target ({exc})") from None
    if kind in _SIMPLE_MOVES:
        return _SIMPLE_MOVES[kind]()
    raise ChainError(f"move {position}: unknown move {kind!r}")


@dataclass
class ChainSpec:
    moves: list
    start: DP4Marking = field(default_factory=DP4Marking.standard)
    group: GroupAction | None = None

    def to_json(self) -> dict:
        out = {"start": self.start.to_json(), "moves": [m.to_json() for m in self.moves]}
        if self.group is not None:
            out["group"] = [str(s) for s in self.group.group.generators]
        return out


def load_chain(data) -> ChainSpec:
    """A JSON array of moves, or an object with "moves" and optional "start" and "group"."""
    if isinstance(data, (str, Path)):
        data = json.loads(Path(data).read_text())
    if isinstance(data, list):
        data = {"moves": data}
    if not isinstance(data, dict) or not isinstance(data.get("moves"), list):
        raise ChainError("chain must be a list of moves or an object with a 'moves' list")
    moves = [move_from_json(r, i) for i, r in enumerate(data["moves"])]
    start = DP4Marking.from_json(data["start"]) if "start" in data else DP4Marking.standard()
    group = None
    if data.get("group"):
        group = GroupAction(generate_subgroup([parse_element(t) for t in data["group"]], 5))
    return ChainSpec(moves, start, group)


@dataclass(frozen=True)
class ChainResult:
    bijection: LineBijection
    steps: tuple[str, ...]
    equivariant: bool
    invariant_before: ClassInvariant | None
    invariant_after: ClassInvariant | None

    @property
    def invariant_preserved(self) -> bool:
        return self.invariant_before == self.invariant_after


def chain_compose(moves: Sequence[Move], start: DP4Marking | None = None, group: GroupAction | None = None) -> ChainResult:
    """Track the lines of the starting quartic surface through the moves.

    The result is certified equivariant for N and for G (acting through its
    marked action), and the class invariant of the G-action transported to
    the final surface is compared with the initial one.
    """
    start = start or DP4Marking.standard()
    state: tuple[str, object] = ("dp4", start)
    # tracked[i] is the current class of the i-th line of the starting surface
    tracked: list[PicClass] = list(enumerate_lines(DP4))
    steps = []
    for pos, move in enumerate(moves):
        kind, marking = state
        if _EXPECTS[move.kind] != kind:
            raise ChainError(f"move {pos} ({move.kind}) expects a {_EXPECTS[move.kind]} state, got {kind}")
        if isinstance(move, BlowupMove):
            tracked = [blowup_pullback(d) for d in tracked]
            state = ("dp3", construction_StoX(marking))
        elif isinstance(move, ThetaMove):
            t = theta_tilde(marking, move.target)
            tracked = [t(d) for d in tracked]
            state = ("dp3", move.target)
        elif isinstance(move, BlowdownMove):
            tracked = [blowdown_pushforward(d) for d in tracked]
            state = ("dp4", construction_XtoS(marking))
        else:
            inv = birational_gb_on_dp4(2 if isinstance(move, GeiserMove) else 3)
            lines, index = enumerate_lines(DP4), line_index(DP4)
            tracked = [lines[inv.line_permutation[index[d.coords]]] for d in tracked]
        steps.append(f"{move.kind}: {state[0]}")
    kind, final = state
    if kind != "dp4":
        raise ChainError("chain must end on a quartic surface")
    index = line_index(DP4)
    bijection = LineBijection(start, final, tuple(index[d.coords] for d in tracked))

    src, tgt = dp4_action(start), dp4_action(final)
    equivariant = is_equivariant_bijection(bijection.perm, src, tgt, normal_subgroup_N(5))
    before = after = None
    if group is not None:
        # transport g to nu A(rho(g)) nu^-1 and read it back through the final marking
        inv_perm = [0] * len(bijection.perm)
        for i, j in enumerate(bijection.perm):
            inv_perm[j] = i
        transported = {}
        for g in group.group.elements:
            p = src.permutation(group.image(g))
            transported[g] = tgt.element_of_permutation(tuple(bijection.perm[p[inv_perm[j]]] for j in range(len(p))))
        moved = GroupAction(group.group, transported)
        equivariant = equivariant and all(moved.image(g) == group.image(g) for g in group.group.elements)
        before, after = classify_surface(group), classify_surface(moved)
    return ChainResult(bijection, tuple(steps), equivariant, before, after)


def random_chain(rng: random.Random, max_length: int = 5) -> list[Move]:
    """A well-typed chain of at most ``max_length`` moves ending on a quartic surface."""
    length = rng.randint(1, max_length)
    markings = all_cb_markings()
    moves: list[Move] = []
    state = "dp4"
    while len(moves) < length:
        remaining = length - len(moves)
        if state == "dp3":
            if remaining == 1 or rng.random() < 0.4:
                moves.append(BlowdownMove())
                state = "dp4"
            else:
                moves.append(ThetaMove(rng.choice(markings)))
        elif remaining == 1:
            moves.append(rng.choice((GeiserMove(), BertiniMove())))
        else:
            moves.append(rng.choice((BlowupMove(), BlowupMove(), GeiserMove(), BertiniMove())))
            state = "dp3" if moves[-1].kind == "blowup" else "dp4"
    return moves
