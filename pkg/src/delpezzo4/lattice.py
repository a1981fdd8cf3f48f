"""Picard lattices of blow-ups of the plane.

The degree-d lattice has basis e0 (pullback of a line) and e1..e_{9-d}
(exceptional classes), with intersection form diag(1, -1, ..., -1).  The
exceptional class of the most recently blown-up point is always the last
basis vector, so on the cubic surface the conic bundle comes from e6.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


class TagMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LatticeTag:
    degree: int

    def __post_init__(self):
        if not 1 <= self.degree <= 8:
            raise ValueError(f"del Pezzo degree must be in 1..8, got {self.degree}")

    @property
    def rank(self) -> int:
        return 10 - self.degree

    @property
    def name(self) -> str:
        return f"dp{self.degree}"

    @classmethod
    def parse(cls, text: str) -> "LatticeTag":
        text = text.strip().lower()
        if not text.startswith("dp") or not text[2:].isdigit():
            raise ValueError(f"bad lattice tag {text!r}")
        return cls(int(text[2:]))

    def __str__(self) -> str:
        return self.name


DP1, DP2, DP3, DP4 = (LatticeTag(d) for d in (1, 2, 3, 4))


@dataclass(frozen=True)
class PicClass:
    tag: LatticeTag
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.tag.rank:
            raise ValueError(f"{self.tag} classes have {self.tag.rank} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, tag: LatticeTag, coords: Iterable[int]) -> "PicClass":
        return cls(tag, tuple(coords))

    def _check(self, other: "PicClass") -> None:
        if self.tag != other.tag:
            raise TagMismatch(f"{self.tag} vs {other.tag}")

    def __add__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(self.tag, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(self.tag, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "PicClass":
        return PicClass(self.tag, tuple(-a for a in self.coords))

    def __rmul__(self, n: int) -> "PicClass":
        return PicClass(self.tag, tuple(n * a for a in self.coords))

    def dot(self, other: "PicClass") -> int:
        return intersect(self, other)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def apply(self, matrix: np.ndarray) -> "PicClass":
        return PicClass(self.tag, tuple(int(x) for x in matrix @ self.vector))

    def __str__(self) -> str:
        return format_class(self)


def intersect(a: PicClass, b: PicClass) -> int:
    a._check(b)
    return a.coords[0] * b.coords[0] - sum(x * y for x, y in zip(a.coords[1:], b.coords[1:]))


def gram_matrix(tag: LatticeTag) -> np.ndarray:
    return np.diag([1] + [-1] * (tag.rank - 1)).astype(np.int64)


def basis_vector(tag: LatticeTag, i: int) -> PicClass:
    coords = [0] * tag.rank
    coords[i] = 1
    return PicClass(tag, tuple(coords))


def canonical_class(tag: LatticeTag) -> PicClass:
    return PicClass(tag, (-3,) + (1,) * (tag.rank - 1))


def is_line(d: PicClass) -> bool:
    k = canonical_class(d.tag)
    return intersect(d, d) == -1 and intersect(d, k) == -1


def _line_coords(rank: int) -> list[tuple[int, ...]]:
    # D^2 = -1 and D.K = -1 read: sum a_i = 3 a0 - 1, sum a_i^2 = a0^2 + 1,
    # writing D = a0 e0 - sum a_i e_i.
    n = rank - 1
    found = []
    # Cauchy-Schwarz, (3 a0 - 1)^2 <= n (a0^2 + 1), leaves finitely many a0.
    for a0 in range(-3 * n, 3 * n + 1):
        if (3 * a0 - 1) ** 2 > n * (a0 * a0 + 1):
            continue
        target_sum, target_sq = 3 * a0 - 1, a0 * a0 + 1
        bound = int(target_sq**0.5) + 1

        def rec(prefix: list[int], remaining: int, s: int, q: int):
            if remaining == 0:
                if s == target_sum and q == target_sq:
                    found.append((a0,) + tuple(-a for a in prefix))
                return
            for a in range(-bound, bound + 1):
                q2 = q + a * a
                if q2 > target_sq:
                    continue
                s2 = s + a
                # the rest must close the gap in the sum with the remaining squares
                rest = remaining - 1
                gap = target_sum - s2
                if gap * gap > rest * (target_sq - q2):
                    continue
                rec(prefix + [a], rest, s2, q2)

        rec([], n, 0, 0)
    return sorted(found)


@lru_cache(maxsize=None)
def _lines(degree: int) -> tuple[PicClass, ...]:
    tag = LatticeTag(degree)
    return tuple(PicClass(tag, c) for c in _line_coords(tag.rank))


def enumerate_lines(tag: LatticeTag) -> tuple[PicClass, ...]:
    """All classes with D^2 = D.K = -1, sorted lexicographically on coordinates."""
    if tag.degree not in (1, 2, 3, 4):
        raise ValueError(f"line enumeration supports degrees 1..4, got {tag.degree}")
    return _lines(tag.degree)


@lru_cache(maxsize=None)
def line_index(tag: LatticeTag) -> dict[tuple[int, ...], int]:
    return {d.coords: i for i, d in enumerate(enumerate_lines(tag))}


def _adjacent(source: LatticeTag, target: LatticeTag, step: int) -> None:
    if target.degree != source.degree + step:
        raise TagMismatch(f"{source} and {target} are not adjacent in the required direction")


def blowup_pullback(d: PicClass, target: LatticeTag | None = None) -> PicClass:
    """Pullback to the blow-up at one further point (a point on no line)."""
    target = target or LatticeTag(d.tag.degree - 1)
    _adjacent(d.tag, target, -1)
    return PicClass(target, d.coords + (0,))


def blowdown_pushforward(d: PicClass, target: LatticeTag | None = None) -> PicClass:
    """Pushforward along the contraction of the last exceptional class."""
    target = target or LatticeTag(d.tag.degree + 1)
    _adjacent(d.tag, target, 1)
    return PicClass(target, d.coords[:-1])


def pullback_matrix(source: LatticeTag) -> np.ndarray:
    n = source.rank
    return np.vstack([np.eye(n, dtype=np.int64), np.zeros((1, n), dtype=np.int64)])


# -- the conic bundle on the cubic surface ------------------------------------


def fiber_class(tag: LatticeTag = DP3) -> PicClass:
    """F = -K - e6, the conic class of the projection from the line e6."""
    if tag != DP3:
        raise ValueError("the conic bundle lives on the dp3 lattice")
    return -canonical_class(tag) - basis_vector(tag, tag.rank - 1)


class FibrationRole(Enum):
    COMPONENT = "component"
    SECTION = "section"
    BISECTION = "bisection"


def classify_wrt_fibration(d: PicClass) -> FibrationRole:
    if d.tag != DP3 or not is_line(d):
        raise ValueError(f"{d} is not a line on the cubic surface")
    return {0: FibrationRole.COMPONENT, 1: FibrationRole.SECTION, 2: FibrationRole.BISECTION}[
        intersect(d, fiber_class())
    ]


@lru_cache(maxsize=None)
def section_lines() -> tuple[PicClass, ...]:
    return tuple(d for d in enumerate_lines(DP3) if classify_wrt_fibration(d) is FibrationRole.SECTION)


@lru_cache(maxsize=None)
def component_lines() -> tuple[PicClass, ...]:
    return tuple(d for d in enumerate_lines(DP3) if classify_wrt_fibration(d) is FibrationRole.COMPONENT)


@lru_cache(maxsize=None)
def degenerate_fibers() -> tuple[tuple[PicClass, PicClass], ...]:
    """The five degenerate fibers as pairs (E, F - E), E the lexicographically larger."""
    f = fiber_class()
    pairs = set()
    for e in component_lines():
        other = f - e
        assert is_line(other) and intersect(e, other) == 1
        pairs.add(tuple(sorted((e, other), key=lambda c: c.coords, reverse=True)))
    return tuple(sorted(pairs, key=lambda p: p[0].coords, reverse=True))


# -- display --------------------------------------------------------------------


def format_class(d: PicClass) -> str:
    terms = []
    for i, c in enumerate(d.coords):
        if c == 0:
            continue
        coef = "" if abs(c) == 1 else str(abs(c))
        terms.append(("-" if c < 0 else "+") + coef + f"e{i}")
    if not terms:
        return "0"
    text = "".join(terms)
    return text[1:] if text.startswith("+") else text


def parse_class(text: str | Sequence[int], tag: LatticeTag) -> PicClass:
    """Accepts a JSON-style integer array such as ``[2,-1,-1,-1,-1,-1]``."""
    if isinstance(text, str):
        import json

        values = json.loads(text)
    else:
        values = list(text)
    if not all(isinstance(v, int) for v in values):
        raise ValueError(f"class coordinates must be integers: {text!r}")
    return PicClass(tag, tuple(values))
