"""Correction terms of knot surgeries and the lattice obstructions built on them.

Reports never claim more than the d-invariant inequalities give: a Pass means
the lattice survives the obstruction, not that a filling exists.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .knot_data import AlexanderPolynomial, KnotModel, VSequence, delta_second_derivative, v_sequence
from .lattice_core import (AssertionViolated, CosetMinima, GramLattice, char_coset_minima,
                           discriminant_group, min_char_norm, split_standard, standard_lattice)
from .lens_spaces import IndexOutOfRange, NotCoprime, d_lens, d_lens_n1

Mode = Literal["global", "matching", "affine"]
MODES: Tuple[Mode, ...] = ("global", "matching", "affine")
VLike = Union[VSequence, Sequence[int]]


class DeterminantMismatch(ValueError):
    pass


class NonCyclicDiscriminant(ValueError):
    pass


def _v(V: VLike, i: int) -> int:
    if isinstance(V, VSequence):
        return V[i]
    return V[i] if i < len(V) else 0


@dataclass(frozen=True)
class DInvariantTable:
    """Correction terms indexed by ``0..p-1``.

    ``conj_shift`` encodes spin^c conjugation as ``i -> (conj_shift - i) mod p``.
    """

    p: int
    values: Tuple[Fraction, ...]
    source: str = ""
    conj_shift: int = 0

    def __post_init__(self):
        if len(self.values) != self.p:
            raise ValueError(f"table for p={self.p} has {len(self.values)} values")
        for i, v in enumerate(self.values):
            if (4 * self.p) % Fraction(v).denominator:
                raise AssertionViolated(f"d[{i}] = {v}: denominator does not divide {4 * self.p}")

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return self.p

    def conj(self, i: int) -> int:
        return (self.conj_shift - i) % self.p

    def is_symmetric(self) -> bool:
        return all(self.values[i] == self.values[self.conj(i)] for i in range(self.p))

    def reversed(self) -> "DInvariantTable":
        """Table of the orientation-reversed manifold."""
        return DInvariantTable(self.p, tuple(-v for v in self.values),
                               f"-({self.source})", self.conj_shift)

    def to_json(self) -> dict:
        return {"p": self.p, "source": self.source, "values": list(self.values)}


def beta(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(1, n) - 1 if n % 2 else Fraction(-1)


def d_surgery(V: VLike, p: int, q: int, i: int) -> Fraction:
    """``d(S^3_{p/q}(K), i) = d(L(p,q), i) - 2 max(V_{floor(i/q)}, V_{floor((p+q-1-i)/q)})``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if not 0 <= i < p:
        raise IndexOutOfRange(f"index {i} outside 0..{p - 1}")
    return d_lens(p, q, i) - 2 * max(_v(V, i // q), _v(V, (p + q - 1 - i) // q))


def d_table(V: VLike, n: int) -> DInvariantTable:
    """All correction terms of ``S^3_n(K)`` for a positive integer ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    vals = tuple(d_lens_n1(n, i) - 2 * max(_v(V, i), _v(V, n - i)) for i in range(n))
    table = DInvariantTable(n, vals, f"S^3_{n}(K)", 0)
    if not table.is_symmetric():
        raise AssertionViolated(f"d-table of S^3_{n}(K) is not conjugation symmetric")
    return table


def surgery_table(V: VLike, p: int, q: int = 1) -> DInvariantTable:
    """Formula-level table for ``p/q`` surgery; labels for ``q > 1`` carry no geometric claim."""
    if q == 1:
        return d_table(V, p)
    vals = tuple(d_surgery(V, p, q, i) for i in range(p))
    return DInvariantTable(p, vals, f"S^3_{p}/{q}(K)", p + q - 1)


def lens_table(p: int, q: int, orientation: str = "standard") -> DInvariantTable:
    vals = tuple(d_lens(p, q, i, orientation) for i in range(p))
    if orientation == "reversed":
        return DInvariantTable(p, vals, f"-L({p},{p - q})", 2 * p - q - 1)
    return DInvariantTable(p, vals, f"L({p},{q})", p + q - 1)


# -- large surgery bound ---------------------------------------------------

@dataclass(frozen=True)
class BetaCheck:
    n: int
    holds: bool
    index: Optional[int] = None  # first failing index

    def __str__(self) -> str:
        return "Holds" if self.holds else f"FailsAt({self.index})"


def beta_bound_check(V: VSequence, n: int) -> BetaCheck:
    """Is ``beta(n) <= 4 d(S^3_n(K), i)`` for every ``i``?"""
    b = beta(n)
    table = d_table(V, n)
    for i, d in enumerate(table.values):
        if b > 4 * d:
            if n > 4 * V.g4 + 3:
                raise AssertionViolated(f"beta bound fails at n={n}, i={i} beyond 4g4+3")
            return BetaCheck(n, False, i)
    return BetaCheck(n, True)


def l_upper_bound(V: VSequence) -> int:
    """Largest ``n`` at which the beta bound fails (0 if none).

    This bounds ``l(K)`` from above: for larger ``n`` only standard lattices
    survive.  It is not ``l(K)`` itself.
    """
    for n in range(4 * V.g4 + 3, 0, -1):
        if not beta_bound_check(V, n).holds:
            return n
    return 0


# -- lattice vs table ------------------------------------------------------

@dataclass
class ObstructionReport:
    mode: str
    verdict: str  # "Pass" | "Fail"
    witness: Any = None
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"

    def to_json(self) -> dict:
        return {"mode": self.mode, "verdict": self.verdict, "witness": self.witness, "data": self.data}


def _orbits(n: int, inv: Callable[[int], int]) -> Tuple[List[Tuple[int]], List[Tuple[int, int]]]:
    fixed, pairs = [], []
    for i in range(n):
        j = inv(i)
        if j == i:
            fixed.append((i,))
        elif i < j:
            pairs.append((i, j))
    return fixed, pairs


def _match_orbits(table: DInvariantTable, cm: CosetMinima, ok: Callable[[int, int], bool]):
    """Involution-compatible bijection indices -> cosets with ``ok(i, c)`` everywhere.

    Returns ``(assignment, None)`` or ``(None, failing_index_orbit)``.
    """
    ifix, ipair = _orbits(table.p, table.conj)
    cfix, cpair = _orbits(len(cm.cosets), lambda k: cm.negation[k])
    assignment: Dict[int, int] = {}

    def solve(iorbits, corbits, place):
        if len(iorbits) != len(corbits):
            return iorbits[0] if iorbits else corbits[0]
        if not iorbits:
            return None
        rows, cols, how = [], [], {}
        for a, io in enumerate(iorbits):
            for b, co in enumerate(corbits):
                h = place(io, co)
                if h is not None:
                    rows.append(a)
                    cols.append(b)
                    how[a, b] = h
        graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                           shape=(len(iorbits), len(corbits)))
        match = maximum_bipartite_matching(graph, perm_type="column")
        for a, b in enumerate(match):
            if b < 0:
                return iorbits[a]
            assignment.update(how[a, int(b)])
        return None

    def place_fixed(io, co):
        return {io[0]: co[0]} if ok(io[0], co[0]) else None

    def place_pair(io, co):
        i, j = io
        c, d = co
        if ok(i, c) and ok(j, d):
            return {i: c, j: d}
        if ok(i, d) and ok(j, c):
            return {i: d, j: c}
        return None

    bad = solve(ifix, cfix, place_fixed) or solve(ipair, cpair, place_pair)
    if bad is not None:
        return None, bad
    return assignment, None


def _affine(table: DInvariantTable, cm: CosetMinima, ok: Callable[[int, int], bool]):
    """Search maps ``i -> [xi_0 + 2 i u]`` with ``[u]`` generating the discriminant group."""
    delta = len(cm.cosets)
    keyed = lambda k: cm.index((k % delta,) if delta > 1 else ())
    for k0 in range(delta):
        for a in range(1, delta + 1):
            if gcd(a, delta) != 1 or (a == delta and delta > 1):
                continue
            psi = [keyed(k0 + a * i) for i in range(table.p)]
            if all(ok(i, psi[i]) and psi[table.conj(i)] == cm.negation[psi[i]]
                   for i in range(table.p)):
                return {"xi0_key": k0 % delta, "step": a % delta if delta > 1 else 0}, psi
    return None, None


def _prepare(lat: GramLattice, table: DInvariantTable, mode: str):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if lat.det != table.p:
        raise DeterminantMismatch(f"det(L) = {lat.det} but the table has {table.p} spin^c structures")
    if mode == "affine" and not discriminant_group(lat).is_cyclic:
        raise NonCyclicDiscriminant(f"discriminant group {discriminant_group(lat).invariant_factors}")


def _coset_report(mode, lat, table, cm, ok, data):
    def keyed(assign):
        return {str(i): list(cm.cosets[c].representative) for i, c in sorted(assign.items())}

    if mode == "matching":
        assign, bad = _match_orbits(table, cm, ok)
        if assign is None:
            return ObstructionReport(mode, "Fail", {"unmatched_indices": list(bad)}, data)
        return ObstructionReport(mode, "Pass", {"assignment": keyed(assign)}, data)
    params, psi = _affine(table, cm, ok)
    if psi is None:
        return ObstructionReport(mode, "Fail", None, data)
    wit = dict(params, assignment=keyed(dict(enumerate(psi))))
    return ObstructionReport(mode, "Pass", wit, data)


def lattice_obstruction(lat: GramLattice, table: DInvariantTable, mode: Mode = "global") -> ObstructionReport:
    """Can ``lat`` be the form of a positive definite filling with these correction terms?

    Every coset ``c`` assigned to label ``i`` needs ``m(c) >= rank + 4 d[i]``.
    ``global`` compares only the extremes; ``matching`` asks for a
    conjugation-compatible bijection; ``affine`` restricts that bijection to
    affine maps (cyclic discriminant group only).
    """
    _prepare(lat, table, mode)
    r = lat.rank
    dmin = min(table.values)
    data: Dict[str, Any] = {"rank": r, "det": lat.det, "min_d": dmin, "source": table.source}
    if mode == "global":
        mu, xi = min_char_norm(lat)
        need = r + 4 * dmin
        data.update(min_char_norm=mu, required=need)
        if mu >= need:
            return ObstructionReport(mode, "Pass", None, data)
        return ObstructionReport(mode, "Fail",
                                 {"covector": list(xi), "index": table.values.index(dmin)}, data)
    cm = char_coset_minima(lat)
    ok = lambda i, c: cm.minima[c] >= r + 4 * table.values[i]
    return _coset_report(mode, lat, table, cm, ok, data)


def sharpness_check(lat: GramLattice, table: DInvariantTable, mode: Mode = "matching") -> ObstructionReport:
    """Is the negative definite form ``-lat`` sharp for the manifold with table ``table``?

    Sharp means ``d[i] = (rank - m(psi(i))) / 4`` for every label.  ``global``
    compares the two multisets without the conjugation constraint.
    """
    _prepare(lat, table, mode)
    r = lat.rank
    cm = char_coset_minima(lat)
    sharp_vals = [(r - m) / 4 for m in cm.minima]
    data: Dict[str, Any] = {"rank": r, "det": lat.det, "source": table.source}
    if mode == "global":
        if sorted(sharp_vals) == sorted(table.values):
            return ObstructionReport(mode, "Pass", None, data)
        extra = sorted(set(table.values) ^ set(sharp_vals))
        return ObstructionReport(mode, "Fail", {"mismatched_values": extra or "multiplicities"}, data)
    ok = lambda i, c: sharp_vals[c] == table.values[i]
    return _coset_report(mode, lat, table, cm, ok, data)


# -- theorem-level verdicts ------------------------------------------------

def is_square_free(n: int) -> bool:
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass
class StandardnessReport:
    n: int
    g4: int
    branch: str  # "standard" | "obstructed" | "inconclusive"
    split: str
    obstruction: ObstructionReport
    square_free: bool

    @property
    def threshold(self) -> int:
        return 4 * self.g4 + 3

    def to_json(self) -> dict:
        return {"n": self.n, "g4": self.g4, "threshold": self.threshold, "branch": self.branch,
                "split": self.split, "square_free": self.square_free,
                "obstruction": self.obstruction.to_json()}


def standardness_verdict(knot: Union[KnotModel, VSequence], n: int, lat: GramLattice) -> StandardnessReport:
    """Large-surgery classification on concrete data.

    Beyond ``4 g4 + 3`` a lattice either fails the global obstruction or is
    ``<n> + <1>^(r-1)``; anything else raises :class:`AssertionViolated`.
    """
    V = knot if isinstance(knot, VSequence) else v_sequence(knot)
    if lat.det != n:
        raise DeterminantMismatch(f"det(L) = {lat.det} but n = {n}")
    obs = lattice_obstruction(lat, d_table(V, n), "global")
    split = split_standard(lat)
    if n > 4 * V.g4 + 3:
        if split.standard and split.delta == n:
            branch = "standard"
        elif not obs.passed:
            branch = "obstructed"
        else:
            raise AssertionViolated(f"non-standard lattice passes the obstruction at n={n}")
    else:
        branch = "inconclusive"
    return StandardnessReport(n, V.g4, branch, str(split), obs, is_square_free(n))


def unknot_check(delta: AlexanderPolynomial) -> bool:
    """For an L-space knot: True iff it is the unknot (``Delta''(1) == 0``)."""
    return delta_second_derivative(delta) == 0


def max_sum(V: VLike, n: int) -> int:
    return sum(max(_v(V, i), _v(V, n - i)) for i in range(n))


def d_sum_defect(V: VLike, n: int) -> Fraction:
    """``sum_i d(S^3_n(K), i) - sum_i d(L(n,1), i)``."""
    return sum(d_table(V, n).values, Fraction(0)) - sum((d_lens_n1(n, i) for i in range(n)), Fraction(0))


@dataclass
class SlopeBoundReport:
    n: int
    unknot: bool
    standard_sharp: bool
    l_bound: int
    genus: int
    consistent: bool

    @property
    def within_bound(self) -> bool:
        return self.n <= 4 * self.genus + 3

    def to_json(self) -> dict:
        return {"n": self.n, "unknot": self.unknot, "standard_sharp": self.standard_sharp,
                "l_upper_bound": self.l_bound, "genus_bound": 4 * self.genus + 3,
                "within_bound": self.within_bound, "consistent": self.consistent}


def slope_bound_check(knot: KnotModel, n: int, mode: Mode = "matching") -> SlopeBoundReport:
    """Check the slope bound for L-space knots on data.

    ``S^3_{-n}`` of the mirror has table ``-d(S^3_n(K))``.  A standard sharp
    filling of it must force the unknot; for a non-trivial knot the standard
    lattice has to fail sharpness.
    """
    if knot.alexander is None:
        raise ValueError("slope bound check needs an Alexander polynomial")
    V = v_sequence(knot)
    unknot = unknot_check(knot.alexander)
    table = d_table(V, n).reversed()
    sharp = sharpness_check(standard_lattice(n), table, mode).passed
    genus = knot.genus if knot.genus is not None else V.g4
    return SlopeBoundReport(n, unknot, sharp, l_upper_bound(V), genus, consistent=(sharp == unknot))
