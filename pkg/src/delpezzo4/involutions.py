"""The five quadric involutions of the quartic surface and the Geiser/Bertini lattice involutions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (
    DP1,
    DP2,
    DP4,
    LatticeTag,
    PicClass,
    basis_vector,
    canonical_class,
    enumerate_lines,
    gram_matrix,
    intersect,
    is_line,
    line_index,
)
from .marking import FULL, MarkedAction
from .weyl import Subgroup, WeylElement


@dataclass(frozen=True)
class QuadricInvolution:
    """The sign element over {1..5} - {index}."""

    index: int
    element: WeylElement

    def __post_init__(self):
        if not self.element.in_normal_subgroup or len(self.element.signs) != 4:
            raise ValueError(f"{self.element} is not a four-index sign element")
        if self.element.signs != FULL - {self.index}:
            raise ValueError(f"index {self.index} does not match {self.element}")

    def __str__(self) -> str:
        return f"R{self.index}: {self.element}"


def quadric_involutions() -> list[QuadricInvolution]:
    return [QuadricInvolution(i, WeylElement.iota(FULL - {i})) for i in range(1, 6)]


def apply_to_line(inv: QuadricInvolution, q: PicClass, action: MarkedAction) -> PicClass:
    out = action.act_on_line(inv.element, q)
    assert out != q and intersect(out, q) == 1
    return out


def delta_correspondence(q: PicClass, action: MarkedAction) -> dict[PicClass, int]:
    """Each line meeting ``q`` paired with the index of the involution sending ``q`` to it."""
    out = {apply_to_line(inv, q, action): inv.index for inv in quadric_involutions()}
    meeting = {d for d in action.lines if intersect(d, q) == 1}
    assert set(out) == meeting and len(out) == 5
    return out


def delta_is_equivariant(q: PicClass, action: MarkedAction, group: Subgroup) -> bool:
    """Whether the correspondence intertwines g on lines with g's permutation of the indices.

    Conjugating the involution with sign set {1..5} - {i} by g gives the one
    for g(i), so an element fixing ``q`` must carry the line of index i to the
    line of index g(i).
    """
    corr = delta_correspondence(q, action)
    for g in group.generators:
        if action.act_on_line(g, q) != q:
            raise ValueError(f"{g} does not fix {q}")
        for line, i in corr.items():
            if corr[action.act_on_line(g, line)] != g(i):
                return False
    return True


def _reflection_through_k(tag: LatticeTag, multiplier: int) -> np.ndarray:
    # D -> -D + m (D.K) K as a matrix on coordinates
    k = canonical_class(tag).vector
    return -np.eye(tag.rank, dtype=np.int64) + multiplier * np.outer(k, k @ gram_matrix(tag))


def geiser_involution(tag: LatticeTag = DP2) -> np.ndarray:
    if tag != DP2:
        raise ValueError("the Geiser involution acts on the degree 2 lattice")
    return _reflection_through_k(tag, 1)


def bertini_involution(tag: LatticeTag = DP1) -> np.ndarray:
    if tag != DP1:
        raise ValueError("the Bertini involution acts on the degree 1 lattice")
    return _reflection_through_k(tag, 2)


@dataclass(frozen=True)
class BirationalInvolution:
    """The involution of the quartic surface regularised on a further blow-up Y.

    ``lifted`` maps each line l of the quartic surface to sigma(pi^* l) on Y.
    ``line_permutation`` is l -> pi'_*(sigma(pi^* l)) for the second
    contraction pi' = pi o sigma, indexed as in enumerate_lines(dp4).
    """

    point_degree: int
    tag: LatticeTag
    matrix: np.ndarray
    lifted: dict
    extra_images: tuple[PicClass, ...]
    line_permutation: tuple[int, ...]

    @property
    def kind(self) -> str:
        return "geiser" if self.point_degree == 2 else "bertini"


def birational_gb_on_dp4(point_degree: int) -> BirationalInvolution:
    if point_degree == 2:
        tag, sigma = DP2, geiser_involution()
    elif point_degree == 3:
        tag, sigma = DP1, bertini_involution()
    else:
        raise ValueError(f"point degree must be 2 or 3, got {point_degree}")
    n = DP4.rank

    def pull(d: PicClass) -> PicClass:
        return PicClass(tag, d.coords + (0,) * point_degree)

    def push(d: PicClass) -> PicClass:
        return PicClass(DP4, d.coords[:n])

    assert np.array_equal(sigma @ sigma, np.eye(tag.rank, dtype=np.int64))
    g = gram_matrix(tag)
    assert np.array_equal(sigma.T @ g @ sigma, g)

    extra = tuple(basis_vector(tag, j) for j in range(n, tag.rank))
    extra_images = tuple(e.apply(sigma) for e in extra)
    # the second contraction is pi o sigma, so the exceptional curves must move
    assert all(is_line(d) for d in extra_images)
    assert not set(extra_images) & set(extra), "the involution fixes an exceptional class"

    lifted, perm = {}, []
    index = line_index(DP4)
    for line in enumerate_lines(DP4):
        image = pull(line).apply(sigma)
        assert is_line(image)
        lifted[line] = image
        # pi'_* = pi_* o sigma_*, and sigma is its own inverse
        perm.append(index[push(image.apply(sigma)).coords])
    return BirationalInvolution(point_degree, tag, sigma, lifted, extra_images, tuple(perm))
