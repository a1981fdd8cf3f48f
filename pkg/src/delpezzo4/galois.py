"""Finite group actions on the quartic surface: orbits, minimality, cohomology, twists, links.

A ``GroupAction`` is a finite group G (kept as a Subgroup of W(D5) for its
multiplication table) with a homomorphism rho: G -> W(D5); G acts on the
lines through the marked action of rho(g).  Writing rho(g) = iota_c(g) * p(g)
with p(g) a pure permutation, the split action g -> p(g) fixes the marking
line Q, and c is a 1-cocycle of G with values in N = (Z/2)^4, G acting on N
by conjugation through p.  Its class in H^1(G, N) is the torsor invariant.

Elements of N are handled as 5-bit masks (bit i-1 for index i).  Over F_2,
N has basis {t, 5} for t = 1..4, and the coordinates of an even mask are its
low four bits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _linalg
from .marking import MarkedAction
from .weyl import Subgroup, WeylElement, compose, format_element, generate_subgroup

N_DIM = 4


class NotMinimalError(ValueError):
    pass


class CocycleError(ValueError):
    pass


# -- masks ----------------------------------------------------------------------


def to_mask(signs) -> int:
    return sum(1 << (i - 1) for i in signs)


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(5) if mask >> i & 1)


def permute_mask(perm: Sequence[int], mask: int) -> int:
    return sum(1 << (perm[i] - 1) for i in range(len(perm)) if mask >> i & 1)


def _full_mask(coords: int) -> int:
    """Even mask with the given four low bits."""
    return coords | ((bin(coords).count("1") & 1) << 4)


# -- group actions ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupAction:
    group: Subgroup
    rho: Mapping[WeylElement, WeylElement] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.rho is None:
            object.__setattr__(self, "rho", {g: g for g in self.group.elements})

    @classmethod
    def inclusion(cls, group: Subgroup) -> "GroupAction":
        return cls(group)

    @classmethod
    def from_generator_images(cls, group: Subgroup, images: Sequence[WeylElement]) -> "GroupAction":
        """Extend generator images along the Cayley graph; raises if this is not a homomorphism."""
        if len(images) != len(group.generators):
            raise ValueError("one image per generator is required")
        gen_image = dict(zip(group.generators, images))
        rho = {group.identity: WeylElement.identity(group.k)}
        queue = deque([group.identity])
        while queue:
            x = queue.popleft()
            for s in group.generators:
                y = group.cayley[(x, s)]
                value = compose(rho[x], gen_image[s])
                if y not in rho:
                    rho[y] = value
                    queue.append(y)
                elif rho[y] != value:
                    raise ValueError("generator images do not define a homomorphism")
        return cls(group, rho)

    def image(self, g: WeylElement) -> WeylElement:
        return self.rho[g]

    def is_homomorphism(self) -> bool:
        return all(
            self.rho[y] == compose(self.rho[x], self.rho[s]) for (x, s), y in self.group.cayley.items()
        )

    def split(self) -> "GroupAction":
        """The action g -> permutation part of rho(g), fixing the marking line."""
        return GroupAction(self.group, {g: w.perm_part() for g, w in self.rho.items()})

    def cocycle(self) -> "Cocycle":
        return Cocycle(
            self.group,
            {g: to_mask(w.signs) for g, w in self.rho.items()},
            {g: w.perm for g, w in self.rho.items()},
        )

    def line_permutation(self, g: WeylElement, action: MarkedAction) -> tuple[int, ...]:
        return action.permutation(self.rho[g])

    def describe(self) -> list[str]:
        return [f"{format_element(s)} -> {format_element(self.rho[s])}" for s in self.group.generators]


def _as_action(g) -> GroupAction:
    return g if isinstance(g, GroupAction) else GroupAction(g)


def orbits_on_lines(group, action: MarkedAction) -> list[tuple[int, ...]]:
    """Orbit partition of line indices, each orbit sorted, orbits ordered by first element."""
    ga = _as_action(group)
    n = len(action.lines)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in ga.group.generators:
        for i, j in enumerate(ga.line_permutation(s, action)):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    orbits: dict[int, list[int]] = {}
    for i in range(n):
        orbits.setdefault(find(i), []).append(i)
    return sorted(tuple(o) for o in orbits.values())


def invariant_rank(group, action: MarkedAction) -> int:
    """Rank of the sublattice of Pic fixed by G, computed exactly."""
    ga = _as_action(group)
    n = action.tag.rank
    if not ga.group.generators:
        return n
    stacked = np.vstack([action.matrix(ga.image(s)) - np.eye(n, dtype=np.int64) for s in ga.group.generators])
    return n - _linalg.rank(stacked)


def is_minimal(group, action: MarkedAction) -> bool:
    return invariant_rank(group, action) == 1


@dataclass(frozen=True)
class DeltaGSet:
    """G acting on the five degenerate fibres (equivalently the five singular quadrics)."""

    group: Subgroup
    perms: tuple[tuple[int, ...], ...]

    @property
    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(1, 6):
            if i in seen:
                continue
            orbit = sorted({p[i - 1] for p in self.perms})
            seen.update(orbit)
            out.append(tuple(orbit))
        return out

    @property
    def orbit_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(o) for o in self.orbits), reverse=True))


def delta_gset(group) -> DeltaGSet:
    ga = _as_action(group)
    return DeltaGSet(ga.group, tuple(ga.image(g).perm for g in ga.group.elements))


# -- cocycles ----------------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle:
    """c: G -> N with c(gh) = c(g) + p(g) c(h); values are 5-bit masks."""

    group: Subgroup
    values: Mapping[WeylElement, int] = field(compare=False, hash=False)
    twist: Mapping[WeylElement, tuple[int, ...]] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.twist is None:
            object.__setattr__(self, "twist", {g: g.perm for g in self.group.elements})
        for g, v in self.values.items():
            if bin(v).count("1") % 2:
                raise CocycleError(f"value at {g} is not in N")

    def __call__(self, g: WeylElement) -> WeylElement:
        return WeylElement.iota(from_mask(self.values[g]), self.group.k)

    def is_cocycle(self) -> bool:
        if any(g not in self.values for g in self.group.elements):
            return False
        if self.values[self.group.identity] != 0:
            return False
        # c(xs) = c(x) + x.c(s) on all Cayley edges gives the full condition by induction
        return all(
            self.values[y] == self.values[x] ^ permute_mask(self.twist[x], self.values[s])
            for (x, s), y in self.group.cayley.items()
        )

    def vector(self) -> tuple[int, ...]:
        return tuple(self.values[g] for g in self.group.elements)

    def translate(self, n: int) -> "Cocycle":
        """The cohomologous cocycle g -> n + c(g) + p(g) n."""
        return Cocycle(
            self.group,
            {g: n ^ v ^ permute_mask(self.twist[g], n) for g, v in self.values.items()},
            self.twist,
        )

    def canonical(self) -> tuple[int, ...]:
        """Lexicographically least value vector over the class."""
        return min(self.translate(_full_mask(t)).vector() for t in range(1 << N_DIM))

    def describe(self) -> list[str]:
        return [f"{format_element(s)} -> {format_element(self(s))}" for s in self.group.generators]


def trivial_cocycle(group: Subgroup, twist=None) -> Cocycle:
    return Cocycle(group, {g: 0 for g in group.elements}, twist)


def torsors_equivalent(c1: Cocycle, c2: Cocycle) -> bool:
    """Whether c2(g) = n c1(g) (g n g^-1) for some n in N (N is abelian, so n^-1 = n)."""
    if not c1.group.same_elements(c2.group):
        raise ValueError("cocycles over different groups")
    target = c2.vector()
    return any(c1.translate(_full_mask(t)).vector() == target for t in range(1 << N_DIM))


def _f2_echelon(vectors: Sequence[int]) -> list[int]:
    """Fully reduced echelon basis of the span, as integers with distinct leading bits."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def _f2_reduce(v: int, echelon: Sequence[int]) -> int:
    for b in echelon:
        v = min(v, v ^ b)
    return v


def _f2_kernel(rows: Sequence[int], nvars: int) -> list[int]:
    """Basis of {x : popcount(row & x) even for every row}."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, pr in pivots.items():
            if r >> col & 1:
                r ^= pr
        if r:
            col = r.bit_length() - 1
            for c, pr in list(pivots.items()):
                if pr >> col & 1:
                    pivots[c] = pr ^ r
            pivots[col] = r
    kernel = []
    for free in range(nvars):
        if free in pivots:
            continue
        x = 1 << free
        for col, pr in pivots.items():
            if pr >> free & 1:
                x |= 1 << col
        kernel.append(x)
    return kernel


@dataclass(frozen=True)
class _H1Data:
    group: Subgroup
    twist: dict
    b_echelon: list
    quotient: list
    propagate: object
    unpack: object


def _h1_data(group) -> _H1Data:
    """Z^1 and B^1 as F_2 subspaces of the generator images.

    Unknowns are the generator images (4 bits each).  Each unit choice is
    propagated along a breadth-first spanning tree of the Cayley graph by
    c(xs) = c(x) + x.c(s); the remaining edges give linear constraints whose
    kernel is Z^1.  B^1 is spanned by the coboundaries g -> n + g.n.
    """
    ga = _as_action(group)
    grp = ga.group
    twist = {g: ga.image(g).perm for g in grp.elements}
    gens = grp.generators
    nvars = N_DIM * len(gens)

    tree_order = [grp.identity]
    tree_edges, other_edges = {}, []
    seen = {grp.identity}
    queue = deque([grp.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = grp.cayley[(x, s)]
            if y in seen:
                other_edges.append((x, s, y))
            else:
                seen.add(y)
                tree_edges[y] = (x, s)
                tree_order.append(y)
                queue.append(y)

    def propagate(gen_values: Sequence[int]) -> dict[WeylElement, int]:
        image = dict(zip(gens, gen_values))
        c = {grp.identity: 0}
        for y in tree_order[1:]:
            x, s = tree_edges[y]
            c[y] = c[x] ^ permute_mask(twist[x], image[s])
        return c

    def unpack(x: int) -> list[int]:
        return [_full_mask(x >> (N_DIM * j) & 0xF) for j in range(len(gens))]

    unit = [propagate(unpack(1 << v)) for v in range(nvars)]
    rows = []
    for x, s, y in other_edges:
        j = gens.index(s)
        for bit in range(N_DIM):
            row = 0
            for v in range(nvars):
                s_val = _full_mask((1 << v) >> (N_DIM * j) & 0xF)
                residual = unit[v][y] ^ unit[v][x] ^ permute_mask(twist[x], s_val)
                if residual >> bit & 1:
                    row |= 1 << v
            if row:
                rows.append(row)
    z_basis = _f2_kernel(rows, nvars)

    def coboundary(n: int) -> int:
        x = 0
        for j, s in enumerate(gens):
            x |= ((n ^ permute_mask(twist[s], n)) & 0xF) << (N_DIM * j)
        return x

    b_echelon = _f2_echelon([coboundary(_full_mask(t)) for t in range(1 << N_DIM)])
    # complement of B inside Z, kept canonically reduced against B
    quotient = []
    for z in z_basis:
        r = _f2_reduce(z, _f2_echelon(b_echelon + quotient))
        if r:
            quotient.append(_f2_reduce(z, b_echelon))
    return _H1Data(grp, twist, b_echelon, quotient, propagate, unpack)


def h1_size(group) -> int:
    return 2 ** len(_h1_data(group).quotient)


def h1(group) -> list[Cocycle]:
    """Representatives of H^1(G, N), one per class, ordered by their generator images."""
    data = _h1_data(group)
    grp, twist, quotient, b_echelon = data.group, data.twist, data.quotient, data.b_echelon
    reps = set()
    for bits in range(1 << len(quotient)):
        x = 0
        for i, q in enumerate(quotient):
            if bits >> i & 1:
                x ^= q
        reps.add(_f2_reduce(x, b_echelon))

    out = []
    for x in sorted(reps):
        values = data.propagate(data.unpack(x))
        c = Cocycle(grp, values, twist)
        if not c.is_cocycle():
            raise AssertionError("constructed cochain fails the cocycle condition")
        out.append(c)
    return out


def twist_action(ga: GroupAction, c: Cocycle) -> GroupAction:
    """g acts as iota_{c(g)} composed with its original action."""
    ga = _as_action(ga)
    if not ga.group.same_elements(c.group):
        raise CocycleError("cocycle is over a different group")
    if any(c.twist[g] != ga.image(g).perm for g in ga.group.elements):
        raise CocycleError("cocycle twist does not match the action on N")
    if not c.is_cocycle():
        raise CocycleError("cocycle condition violated")
    rho = {g: compose(c(g), ga.image(g)) for g in ga.group.elements}
    out = GroupAction(ga.group, rho)
    assert out.is_homomorphism()
    return out


# -- classification ------------------------------------------------------------------


@dataclass(frozen=True)
class ClassInvariant:
    """The Delta G-set (exact, as a homomorphism to S5) and the canonical torsor class."""

    delta: tuple[tuple[int, ...], ...]
    torsor: tuple[int, ...]
    delta_orbits: tuple[int, ...] = field(compare=False)

    def summary(self) -> dict:
        return {
            "delta_orbit_type": list(self.delta_orbits),
            "torsor_trivial": not any(self.torsor),
            "torsor_class": [sorted(from_mask(v)) for v in self.torsor],
        }


def classify_surface(ga) -> ClassInvariant:
    ga = _as_action(ga)
    delta = delta_gset(ga)
    return ClassInvariant(delta.perms, ga.cocycle().canonical(), delta.orbit_type)


def action_from_line_permutations(
    group: Subgroup, perms: Mapping[WeylElement, Sequence[int]], action: MarkedAction
) -> GroupAction:
    """Read off rho(g) from how g permutes the lines; raises for non-configuration permutations."""
    try:
        rho = {g: action.element_of_permutation(perms[g]) for g in group.elements}
    except ValueError as exc:
        raise ValueError("input is not an action by configuration automorphisms") from exc
    ga = GroupAction(group, rho)
    if not ga.is_homomorphism():
        raise ValueError("line permutations do not form a group action")
    return ga


def commuting_isomorphism(a: GroupAction, b: GroupAction) -> WeylElement | None:
    """An n in N with n rho_a(g) n^-1 = rho_b(g) for all g, found by search, or None."""
    from .weyl import conjugate, normal_subgroup_N

    if any(a.image(g).perm != b.image(g).perm for g in a.group.generators):
        return None
    for n in normal_subgroup_N(a.group.k):
        if all(conjugate(n, a.image(g)) == b.image(g) for g in a.group.elements):
            return n
    return None


# -- links --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkFlags:
    """Which G-invariant points in Sarkisov general position are assumed to exist."""

    point: bool = False
    deg2: bool = False
    deg3: bool = False

    def to_json(self) -> dict:
        return {"point": self.point, "deg2": self.deg2, "deg3": self.deg3}


@dataclass(frozen=True)
class Link:
    type: str
    target_kind: str
    notes: str

    def to_json(self) -> dict:
        return {"type": self.type, "target_kind": self.target_kind, "notes": self.notes}


SUPERRIGID = "superrigid"
RIGID = "rigid"
NOT_RIGID = "models = S + cubic conic bundles"


@dataclass(frozen=True)
class LinkReport:
    subgroup: tuple[str, ...]
    flags: LinkFlags
    links: tuple[Link, ...]
    verdict: str

    def to_json(self) -> dict:
        return {
            "schema_version": "1",
            "subgroup": list(self.subgroup),
            "flags": self.flags.to_json(),
            "links": [link.to_json() for link in self.links],
            "verdict": self.verdict,
        }


def enumerate_links(group, action: MarkedAction, flags: LinkFlags) -> LinkReport:
    """Links starting from a G-minimal quartic surface, given which invariant points exist.

    Involution links are certified by running them through chain_compose and
    checking the target carries the same class invariant as the source.
    """
    from .transform import BertiniMove, GeiserMove, chain_compose

    ga = _as_action(group)
    if not is_minimal(ga, action):
        raise NotMinimalError(f"invariant Picard rank is {invariant_rank(ga, action)}, not 1")
    if action.marking is None:
        raise ValueError("link certification needs a marked action")
    links = []
    for present, move, name in ((flags.deg2, GeiserMove(), "GeiserII"), (flags.deg3, BertiniMove(), "BertiniII")):
        if not present:
            continue
        result = chain_compose([move], start=action.marking, group=ga)
        if not (result.equivariant and result.invariant_preserved):
            raise AssertionError(f"{name} link failed certification")
        links.append(Link(name, "dp4", "birational involution; target isomorphic to S with the same class invariant"))
    if flags.point:
        links.append(Link("BlowupI", "cubic conic bundle", "blow-up of the invariant point, then the conic bundle"))
    if flags.point:
        verdict = NOT_RIGID
    elif flags.deg2 or flags.deg3:
        verdict = RIGID
    else:
        verdict = SUPERRIGID
    return LinkReport(tuple(format_element(s) for s in ga.group.generators), flags, tuple(links), verdict)


def subgroup_from_strings(texts: Sequence[str]) -> Subgroup:
    from .weyl import parse_element

    return generate_subgroup([parse_element(t) for t in texts], 5)
