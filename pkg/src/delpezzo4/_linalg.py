"""Exact rational linear algebra on small integer matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np


def _to_fractions(matrix) -> list[list[Fraction]]:
    return [[Fraction(int(x)) for x in row] for row in np.asarray(matrix)]


def rank(matrix) -> int:
    """Rank over the rationals."""
    rows = _to_fractions(matrix)
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col] / rows[r][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def inverse(matrix) -> list[list[Fraction]]:
    """Inverse of a square integer matrix as nested lists of Fractions."""
    n = len(matrix)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_to_fractions(matrix))]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


class NonIntegralError(ArithmeticError):
    pass


class BasisChange:
    """Linear extension from a fixed rational basis, reused across many images.

    ``basis`` holds vectors that span the rationals; ``extend(images)`` returns
    the integer matrix M with M @ basis[j] == images[j], and raises
    NonIntegralError when that map does not preserve the integer lattice.
    """

    def __init__(self, basis: Sequence[Sequence[int]]):
        b_inv = inverse(np.array(basis, dtype=np.int64).T)
        denom = 1
        for row in b_inv:
            for x in row:
                denom = denom * x.denominator // gcd(denom, x.denominator)
        self.denominator = denom
        self.scaled_inverse = np.array([[int(x * denom) for x in row] for row in b_inv], dtype=np.int64)

    def extend(self, images: Sequence[Sequence[int]]) -> np.ndarray:
        scaled = np.array(images, dtype=np.int64).T @ self.scaled_inverse
        if np.any(scaled % self.denominator):
            raise NonIntegralError("linear extension is not integral")
        return scaled // self.denominator


def change_of_basis(basis: Sequence[Sequence[int]], images: Sequence[Sequence[int]]) -> np.ndarray:
    return BasisChange(basis).extend(images)
