"""Positive definite integral lattices and their characteristic covectors.

A lattice is stored by its Gram matrix ``G``.  Covectors (elements of the
dual lattice) are integer vectors in the dual basis, so the extended
pairing is ``Q*(xi, eta) = xi^T G^{-1} eta`` and a covector is
characteristic exactly when ``xi[k] = G[k][k] (mod 2)`` for every ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from . import _exact
from .enumeration import closest_vector, vectors_up_to


class LatticeError(ValueError):
    pass


class NotSquare(LatticeError):
    pass


class NotSymmetric(LatticeError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class AssertionViolated(AssertionError):
    """A theorem-level invariant failed; always an implementation bug."""


Modulus = Literal["2", "2G"]


@dataclass(frozen=True)
class GramLattice:
    gram: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.gram[i][i] for i in range(self.rank))

    @cached_property
    def inverse(self) -> List[List[Fraction]]:
        return _exact.inverse(self.gram)

    @cached_property
    def det(self) -> int:
        return _exact.det(self.gram)

    @cached_property
    def _snf(self):
        u, d, v = _exact.smith_normal_form(self.gram)
        factors = [d[i][i] for i in range(self.rank)]
        return u, factors

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(x[i] * self.gram[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank))

    def to_json(self) -> dict:
        return {"gram": [list(row) for row in self.gram]}


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: Tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1


def make_lattice(gram: Sequence[Sequence[int]]) -> GramLattice:
    """Validate ``gram`` and wrap it as a :class:`GramLattice`.

    >>> make_lattice([[3, -1], [-1, 4]]).det
    11
    """
    rows = [tuple(int(x) for x in row) for row in gram]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise NotSquare("Gram matrix must be a non-empty square matrix")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"G[{i}][{j}] = {rows[i][j]} but G[{j}][{i}] = {rows[j][i]}")
    _, piv = _exact.ldl_pivots(rows)
    if len(piv) < n or piv[-1] <= 0:
        raise NotPositiveDefinite(f"pivot {len(piv)} of the LDL^T factorization is {piv[-1]}")
    return GramLattice(tuple(rows))


def diagonal_lattice(*entries: int) -> GramLattice:
    n = len(entries)
    return make_lattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def direct_sum(*lattices: GramLattice) -> GramLattice:
    n = sum(l.rank for l in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                g[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    return make_lattice(g)


def standard_lattice(n: int, rank: int = 1) -> GramLattice:
    """``<n> + <1>^(rank-1)``."""
    return diagonal_lattice(n, *([1] * (rank - 1)))


def change_basis(lat: GramLattice, p: Sequence[Sequence[int]]) -> GramLattice:
    """Gram matrix ``P^T G P`` of the same lattice in the basis given by the columns of ``P``."""
    return make_lattice(_exact.matmul(_exact.transpose(p), _exact.matmul(lat.gram, p)))


def determinant(lat: GramLattice) -> int:
    return lat.det


def discriminant_group(lat: GramLattice) -> DiscriminantGroup:
    _, factors = lat._snf
    return DiscriminantGroup(tuple(d for d in factors if d > 1))


def dual_norm(lat: GramLattice, xi: Sequence[int], eta: Optional[Sequence[int]] = None) -> Fraction:
    """``Q*(xi, eta) = xi^T G^{-1} eta`` (``eta`` defaults to ``xi``)."""
    if eta is None:
        eta = xi
    inv = lat.inverse
    r = lat.rank
    return sum((xi[i] * inv[i][j] * eta[j] for i in range(r) for j in range(r)), Fraction(0))


def is_characteristic(lat: GramLattice, xi: Sequence[int]) -> bool:
    return all((x - d) % 2 == 0 for x, d in zip(xi, lat.diagonal))


def shifted_min(lat: GramLattice, center: Sequence[int],
                modulus: Modulus = "2") -> Tuple[Fraction, Tuple[int, ...]]:
    """Minimum of ``Q*`` over ``center + 2Z^r`` (``modulus="2"``) or ``center + 2GZ^r``.

    Ties go to the lexicographically largest step vector ``t`` in
    ``xi = center + B t``; for ``modulus="2"`` that is the lexicographically
    largest ``xi``, so a minimizing center is returned as its own witness.
    """
    r = lat.rank
    if len(center) != r:
        raise ValueError(f"center has length {len(center)}, lattice has rank {r}")
    c = [int(x) for x in center]
    if modulus == "2":
        # xi = c + 2t, Q*(xi) = 4 (t + c/2)^T G^-1 (t + c/2)
        a = lat.inverse
        y = [Fraction(x, 2) for x in c]
        val, t = closest_vector(a, y)
        t = [-x for x in t]
        xi = tuple(ci + 2 * ti for ci, ti in zip(c, t))
        return 4 * val, xi
    if modulus == "2G":
        # xi = c + 2Gt, Q*(xi) = 4 (t + G^-1 c/2)^T G (t + G^-1 c/2)
        gc = _exact.matvec(lat.inverse, c)
        val, t = closest_vector(lat.gram, [x / 2 for x in gc])
        t = [-x for x in t]
        gt = _exact.matvec(lat.gram, t)
        xi = tuple(ci + 2 * g for ci, g in zip(c, gt))
        return 4 * val, xi
    raise ValueError(f"unknown modulus {modulus!r}")


# -- characteristic cosets -------------------------------------------------

@dataclass(frozen=True)
class CharCoset:
    """A class of ``char(L)`` modulo ``2L``; ``key`` is its coordinate in ``Z^r / G Z^r``."""

    key: Tuple[int, ...]
    representative: Tuple[int, ...] = field(compare=False)


def coset_key(lat: GramLattice, xi: Sequence[int]) -> Tuple[int, ...]:
    """Key of the coset of characteristic ``xi``; equal keys iff ``xi - xi'`` is in ``2GZ^r``."""
    if not is_characteristic(lat, xi):
        raise ValueError(f"{tuple(xi)} is not characteristic")
    s = [(x - d) // 2 for x, d in zip(xi, lat.diagonal)]
    u, factors = lat._snf
    us = _exact.matvec(u, s)
    return tuple(v % d for v, d in zip(us, factors) if d > 1)


def _transversal(lat: GramLattice):
    u, factors = lat._snf
    uinv = _exact.integer_inverse(u)
    ranges = [range(d) if d > 1 else range(1) for d in factors]
    for k in product(*ranges):
        yield _exact.matvec(uinv, k)


@dataclass(frozen=True)
class CosetMinima:
    cosets: Tuple[CharCoset, ...]
    minima: Tuple[Fraction, ...]
    witnesses: Tuple[Tuple[int, ...], ...]
    negation: Tuple[int, ...]  # negation[k] = index of -cosets[k]

    def as_dict(self) -> Dict[CharCoset, Fraction]:
        return dict(zip(self.cosets, self.minima))

    def index(self, key: Tuple[int, ...]) -> int:
        return self._index[key]

    @cached_property
    def _index(self):
        return {c.key: k for k, c in enumerate(self.cosets)}


_coset_cache: Dict[GramLattice, CosetMinima] = {}


def char_coset_minima(lat: GramLattice) -> CosetMinima:
    """Minimum of ``Q*`` on each of the ``det(L)`` classes of ``char(L) / 2L``."""
    cached = _coset_cache.get(lat)
    if cached is not None:
        return cached
    diag = lat.diagonal
    cosets, minima, wits = [], [], []
    for s in _transversal(lat):
        rep = tuple(d + 2 * x for d, x in zip(diag, s))
        val, wit = shifted_min(lat, rep, "2G")
        cosets.append(CharCoset(coset_key(lat, rep), rep))
        minima.append(val)
        wits.append(wit)
    index = {c.key: k for k, c in enumerate(cosets)}
    negation = tuple(index[coset_key(lat, [-x for x in c.representative])] for c in cosets)
    out = CosetMinima(tuple(cosets), tuple(minima), tuple(wits), negation)
    if len(_coset_cache) < 4096:
        _coset_cache[lat] = out
    return out


_DIRECT_RANK = 6


def min_char_norm(lat: GramLattice) -> Tuple[Fraction, Tuple[int, ...]]:
    """Minimum of ``Q*`` over all characteristic covectors, with a minimizer.

    Small ranks search ``diag(G) + 2Z^r`` directly.  Larger ranks go coset by
    coset through the primal Gram matrix, which keeps banded lattices cheap.
    """
    if lat.rank <= _DIRECT_RANK or lat.det > 4096:
        return shifted_min(lat, lat.diagonal, "2")
    table = char_coset_minima(lat)
    val, neg = min((m, tuple(-x for x in w)) for m, w in zip(table.minima, table.witnesses))
    return val, tuple(-x for x in neg)


# -- standardness ----------------------------------------------------------

@dataclass(frozen=True)
class SplitVerdict:
    standard: bool
    delta: Optional[int] = None
    residual: Optional[GramLattice] = None  # the part left once no unit vector remains

    def __str__(self) -> str:
        return f"Standard({self.delta})" if self.standard else "NonStandard"


def unit_vector(lat: GramLattice) -> Optional[Tuple[int, ...]]:
    """Some ``v`` with ``Q(v, v) = 1``, or ``None``."""
    for v, val in vectors_up_to(lat.gram, Fraction(1)):
        if val == 1:
            return v
    return None


def _complete_basis(v: Sequence[int]) -> List[List[int]]:
    """Unimodular matrix whose first column is the primitive vector ``v``."""
    u, d, _ = _exact.smith_normal_form([[x] for x in v])
    if d[0][0] != 1:
        raise ValueError("vector is not primitive")
    return _exact.integer_inverse(u)


def split_unit(lat: GramLattice, v: Sequence[int]) -> GramLattice:
    """Orthogonal complement of a norm-one vector ``v`` (``L = <1> + v^perp``)."""
    p = _complete_basis(v)
    g = _exact.matmul(_exact.transpose(p), _exact.matmul(lat.gram, p))
    # project the other basis vectors off v; g[0][0] == 1
    n = lat.rank
    comp = [[g[i][j] - g[i][0] * g[0][j] for j in range(1, n)] for i in range(1, n)]
    return make_lattice(comp)


def split_standard(lat: GramLattice) -> SplitVerdict:
    """Decide whether ``L`` is isomorphic to ``<1>^(r-1) + <det L>``."""
    cur = lat
    while cur.rank > 1:
        v = unit_vector(cur)
        if v is None:
            return SplitVerdict(False, residual=cur)
        cur = split_unit(cur, v)
    return SplitVerdict(True, delta=cur.gram[0][0])


# -- Owens-Strle -----------------------------------------------------------

def owens_strle_bound(rank: int, delta: int) -> Fraction:
    return Fraction(rank - 1) + (Fraction(1, delta) if delta % 2 else 0)


@dataclass(frozen=True)
class OwensStrleReport:
    rank: int
    delta: int
    bound: Fraction
    minimum: Fraction
    witness: Tuple[int, ...]
    standard: bool

    @property
    def strict(self) -> bool:
        return self.minimum < self.bound


def owens_strle_check(lat: GramLattice) -> OwensStrleReport:
    r, delta = lat.rank, lat.det
    bound = owens_strle_bound(r, delta)
    mu, wit = min_char_norm(lat)
    standard = split_standard(lat).standard
    if mu > bound:
        raise AssertionViolated(f"min char norm {mu} exceeds bound {bound}")
    if (mu < bound) == standard:
        raise AssertionViolated(
            f"min char norm {mu} vs bound {bound} but lattice is "
            f"{'standard' if standard else 'non-standard'}")
    if ((bound - mu) * delta / 4).denominator != 1:
        raise AssertionViolated(f"{bound} - {mu} is not a multiple of 4/{delta}")
    return OwensStrleReport(r, delta, bound, mu, wit, standard)
