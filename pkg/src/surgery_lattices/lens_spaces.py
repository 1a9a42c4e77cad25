"""Negative continued fractions, linear lattices and lens space correction terms.

Convention: ``L(p, q)`` is ``p/q`` surgery on the unknot, so ``L(n, 1)``
bounds the positive definite lattice ``<n>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Literal, Tuple

from .lattice_core import GramLattice, make_lattice

Orientation = Literal["standard", "reversed"]


class NotCoprime(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class LensSpace:
    """``L(p, q)`` with ``0 < q < p``; ``reversed`` stands for ``L(p, -(p - q))``.

    The reversed record is the orientation reversal of ``L(p, p - q)``, and its
    correction terms are the negatives of that lens space's.
    """

    p: int
    q: int
    orientation: Orientation = "standard"

    @classmethod
    def from_slope(cls, p: int, q: int) -> "LensSpace":
        """``p/q`` surgery on the unknot for any ``q`` prime to ``p``."""
        if p < 2:
            raise ValueError("need p >= 2")
        if gcd(p, q) != 1:
            raise NotCoprime(f"gcd({p}, {q}) != 1")
        qn = q % p
        if q > 0:
            return cls(p, qn, "standard")
        return cls(p, qn, "reversed")  # -L(p, |q|) has values -d(L(p, p - qn))

    def d(self, i: int) -> Fraction:
        return d_lens(self.p, self.q, i, self.orientation)

    def d_values(self) -> List[Fraction]:
        return [self.d(i) for i in range(self.p)]


def neg_continued_fraction(p: int, q: int) -> List[int]:
    """Coefficients ``[a1, ..., ak]`` with ``p/q = a1 - 1/(a2 - 1/(...))``.

    >>> neg_continued_fraction(1, 3)
    [1, 2, 2]
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def evaluate_continued_fraction(coeffs: List[int]) -> Fraction:
    val = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        val = a - 1 / val
    return val


def linear_lattice(p: int, q: int) -> GramLattice:
    """Tridiagonal lattice Lambda(p, q) of the linear plumbing; determinant ``p``."""
    if not p > q >= 1:
        raise ValueError(f"need p > q >= 1, got ({p}, {q})")
    a = neg_continued_fraction(p, q)
    k = len(a)
    g = [[a[i] if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]
    return make_lattice(g)


def d_lens_n1(n: int, i: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= i < n:
        raise IndexOutOfRange(f"index {i} outside 0..{n - 1}")
    return Fraction((2 * i - n) ** 2 - n, 4 * n)


@lru_cache(maxsize=65536)
def _d_rec(p: int, q: int, i: int) -> Fraction:
    if q == 0:
        return Fraction(0)  # L(1, 0) = S^3
    return Fraction((2 * i + 1 - p - q) ** 2 - p * q, 4 * p * q) - _d_rec(q, p % q, i % q)


def d_lens(p: int, q: int, i: int, orientation: Orientation = "standard") -> Fraction:
    """Correction term ``d(L(p, q), i)``.

    Any ``q >= 1`` prime to ``p`` is accepted and used as given, since the
    surgery formula's labels depend on ``q`` itself and not just on ``q mod p``.
    ``orientation="reversed"`` returns ``-d(L(p, p - q), i)``.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if not 0 <= i < p:
        raise IndexOutOfRange(f"index {i} outside 0..{p - 1}")
    if orientation == "reversed":
        if not p > q:
            raise ValueError("reversed orientation needs p > q")
        return -_d_rec(p, p - q, i)
    return _d_rec(p, q, i)


def conjugate_index(p: int, q: int, i: int) -> int:
    """Label of the conjugate spin^c structure: ``i -> (p + q - 1 - i) mod p``."""
    return (p + q - 1 - i) % p


def lens_rows(p: int, q: int, orientation: Orientation = "standard") -> List[Tuple[int, int, int, Fraction]]:
    """Rows ``(p, q, i, d)`` for the CSV/table emitters."""
    return [(p, q, i, d_lens(p, q, i, orientation)) for i in range(p)]
