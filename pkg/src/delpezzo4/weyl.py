"""The Weyl group W(D_k) as even-signed permutations of {1..k}.

An element is stored as a pair (signs, perm) and stands for the product
``iota_signs * perm``: first permute, then flip the signs in ``signs``.
``perm`` is in one-line notation, ``perm[i - 1]`` being the image of ``i``.

Text syntax: ``e`` for the identity, ``i1234`` for a sign element,
``(12)(345)`` for a permutation, and ``*`` for products, e.g. ``i34*(12)``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

MIN_RANK = 4
MAX_RANK = 7
DEFAULT_RANK = 5


class RankError(ValueError):
    pass


def _check_rank(k: int) -> None:
    if not MIN_RANK <= k <= MAX_RANK:
        raise RankError(f"rank must lie in [{MIN_RANK}, {MAX_RANK}], got {k}")


@dataclass(frozen=True)
class WeylElement:
    k: int
    signs: frozenset[int]
    perm: tuple[int, ...]

    def __post_init__(self):
        _check_rank(self.k)
        if sorted(self.perm) != list(range(1, self.k + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{self.k}")
        if not self.signs <= set(range(1, self.k + 1)):
            raise ValueError(f"sign indices {sorted(self.signs)} out of range")
        if len(self.signs) % 2:
            raise ValueError(f"odd sign set {sorted(self.signs)} is not in W(D_{self.k})")

    @classmethod
    def identity(cls, k: int = DEFAULT_RANK) -> "WeylElement":
        return cls(k, frozenset(), tuple(range(1, k + 1)))

    @classmethod
    def iota(cls, indices: Iterable[int], k: int = DEFAULT_RANK) -> "WeylElement":
        return cls(k, frozenset(indices), tuple(range(1, k + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], k: int = DEFAULT_RANK) -> "WeylElement":
        image = list(range(1, k + 1))
        seen: set[int] = set()
        for cycle in cycles:
            if seen & set(cycle) or len(set(cycle)) != len(cycle):
                raise ValueError(f"cycles are not disjoint: {cycles}")
            seen |= set(cycle)
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                if not 1 <= a <= k:
                    raise ValueError(f"index {a} out of range for rank {k}")
                image[a - 1] = b
        return cls(k, frozenset(), tuple(image))

    def __call__(self, i: int) -> int:
        """Image of the index ``i`` under the permutation part."""
        return self.perm[i - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)

    @property
    def is_identity(self) -> bool:
        return not self.signs and self.perm == tuple(range(1, self.k + 1))

    @property
    def in_normal_subgroup(self) -> bool:
        return self.perm == tuple(range(1, self.k + 1))

    def sign_part(self) -> "WeylElement":
        return WeylElement(self.k, self.signs, tuple(range(1, self.k + 1)))

    def perm_part(self) -> "WeylElement":
        return WeylElement(self.k, frozenset(), self.perm)

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.signs)), self.perm)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest entry."""
        out, seen = [], set()
        for start in range(1, self.k + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity:
            g = compose(g, self)
            n += 1
        return n

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"WeylElement({format_element(self)!r}, k={self.k})"


def compose(a: WeylElement, b: WeylElement) -> WeylElement:
    """The product a*b acting on the left: b first, then a."""
    if a.k != b.k:
        raise RankError(f"rank mismatch: {a.k} vs {b.k}")
    signs = a.signs ^ frozenset(a(i) for i in b.signs)
    perm = tuple(a(b(i)) for i in range(1, a.k + 1))
    return WeylElement(a.k, signs, perm)


def inverse(a: WeylElement) -> WeylElement:
    inv = [0] * a.k
    for i, image in enumerate(a.perm, start=1):
        inv[image - 1] = i
    inv_t = tuple(inv)
    return WeylElement(a.k, frozenset(inv_t[i - 1] for i in a.signs), inv_t)


def conjugate(g: WeylElement, x: WeylElement) -> WeylElement:
    """g x g^-1."""
    return compose(compose(g, x), inverse(g))


def product(elements: Iterable[WeylElement], k: int = DEFAULT_RANK) -> WeylElement:
    out = WeylElement.identity(k)
    for g in elements:
        out = compose(out, g)
    return out


@lru_cache(maxsize=None)
def _even_subsets(k: int) -> tuple[frozenset[int], ...]:
    subsets = [frozenset(c) for r in range(0, k + 1, 2) for c in itertools.combinations(range(1, k + 1), r)]
    return tuple(sorted(subsets, key=lambda s: tuple(sorted(s))))


def even_subsets(k: int = DEFAULT_RANK) -> tuple[frozenset[int], ...]:
    _check_rank(k)
    return _even_subsets(k)


@lru_cache(maxsize=None)
def enumerate_group(k: int = DEFAULT_RANK) -> tuple[WeylElement, ...]:
    """All 2^(k-1) k! elements, sorted by sign subset then one-line permutation."""
    _check_rank(k)
    perms = list(itertools.permutations(range(1, k + 1)))
    return tuple(WeylElement(k, s, p) for s in _even_subsets(k) for p in perms)


@lru_cache(maxsize=None)
def normal_subgroup_N(k: int = DEFAULT_RANK) -> tuple[WeylElement, ...]:
    _check_rank(k)
    return tuple(WeylElement.iota(s, k) for s in _even_subsets(k))


@lru_cache(maxsize=None)
def permutation_subgroup_H(k: int = DEFAULT_RANK) -> tuple[WeylElement, ...]:
    """The complement of N consisting of pure permutations."""
    _check_rank(k)
    return tuple(WeylElement(k, frozenset(), p) for p in itertools.permutations(range(1, k + 1)))


def conjugacy_class(g: WeylElement) -> tuple[WeylElement, ...]:
    orbit = {conjugate(h, g) for h in enumerate_group(g.k)}
    return tuple(sorted(orbit, key=WeylElement.sort_key))


@dataclass(frozen=True)
class Subgroup:
    """A finite subgroup given by generators, with its elements and right Cayley graph.

    ``cayley[(x, s)]`` is ``x * s`` for each element ``x`` and generator ``s``.
    """

    k: int
    generators: tuple[WeylElement, ...]
    elements: tuple[WeylElement, ...]
    cayley: dict = field(repr=False, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: WeylElement) -> bool:
        return g in self._element_set

    @property
    def _element_set(self) -> frozenset[WeylElement]:
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_set", cached)
        return cached

    @property
    def identity(self) -> WeylElement:
        return WeylElement.identity(self.k)

    def same_elements(self, other: "Subgroup") -> bool:
        return self._element_set == other._element_set


def generate_subgroup(gens: Sequence[WeylElement], k: int | None = None) -> Subgroup:
    """Closure of ``gens`` by breadth-first right multiplication."""
    gens = tuple(gens)
    if k is None:
        k = gens[0].k if gens else DEFAULT_RANK
    if any(g.k != k for g in gens):
        raise RankError("generators have mixed ranks")
    identity = WeylElement.identity(k)
    seen = {identity}
    queue = deque([identity])
    cayley = {}
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(x, s)
            cayley[(x, s)] = y
            if y not in seen:
                seen.add(y)
                queue.append(y)
    elements = tuple(sorted(seen, key=WeylElement.sort_key))
    return Subgroup(k, gens, elements, cayley)


def quotient_to_Sk(g: WeylElement) -> tuple[int, ...]:
    """Image in the symmetric group: forget the signs."""
    return g.perm


# -- text syntax ------------------------------------------------------------

_FACTOR = re.compile(r"^(?:i(\d+))?((?:\(\d+\))*)$")


def parse_element(text: str, k: int = DEFAULT_RANK) -> WeylElement:
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty element string")
    out = WeylElement.identity(k)
    for token in text.split("*"):
        if token == "e":
            continue
        m = _FACTOR.match(token)
        if not m or not token:
            raise ValueError(f"cannot parse element token {token!r}")
        signs, cycles = m.group(1), m.group(2)
        factor = WeylElement.identity(k)
        if signs:
            idx = [int(c) for c in signs]
            if len(set(idx)) != len(idx):
                raise ValueError(f"repeated sign index in {token!r}")
            factor = WeylElement.iota(idx, k)
        if cycles:
            cyc = [tuple(int(c) for c in part) for part in re.findall(r"\((\d+)\)", cycles)]
            factor = compose(factor, WeylElement.from_cycles(cyc, k))
        out = compose(out, factor)
    return out


def format_element(g: WeylElement) -> str:
    if g.is_identity:
        return "e"
    parts = []
    if g.signs:
        parts.append("i" + "".join(str(i) for i in sorted(g.signs)))
    cycles = g.cycles()
    if cycles:
        parts.append("".join("(" + "".join(map(str, c)) + ")" for c in cycles))
    return "*".join(parts)


def parse_generators(text: str, k: int = DEFAULT_RANK) -> list[WeylElement]:
    """Comma-separated element list; the empty string gives no generators."""
    return [parse_element(tok, k) for tok in text.split(",") if tok.strip()]
