"""Knot inputs: Alexander polynomials, torsion coefficients and V-sequences."""
from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .lens_spaces import NotCoprime

log = logging.getLogger(__name__)


class KnotDataError(ValueError):
    pass


class AsymmetricAlexander(KnotDataError):
    pass


class NotNormalized(KnotDataError):
    pass


class MissingVData(KnotDataError):
    pass


class VInvariantViolated(KnotDataError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class DocumentError(KnotDataError):
    """Malformed knot document; ``field`` names the offending key."""

    def __init__(self, message: str, field: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class AlexanderPolynomial:
    """Symmetric Laurent polynomial, stored as ``(a_0, a_1, ..., a_g)`` with ``a_{-m} = a_m``."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs) or [0]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        if self.at_one() != 1:
            raise NotNormalized(f"Delta(1) = {self.at_one()}, expected 1")

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "AlexanderPolynomial":
        """Build from ``{exponent: coefficient}``; negative exponents must mirror positive ones."""
        terms = {int(m): int(a) for m, a in terms.items() if a}
        for m, a in terms.items():
            if m < 0 and terms.get(-m, 0) != a:
                raise AsymmetricAlexander(f"a_{m} = {a} but a_{-m} = {terms.get(-m, 0)}")
        deg = max((abs(m) for m in terms), default=0)
        return cls(tuple(terms.get(m, terms.get(-m, 0)) for m in range(deg + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, m: int) -> int:
        m = abs(m)
        return self.coeffs[m] if m < len(self.coeffs) else 0

    def at_one(self) -> int:
        return self.coeffs[0] + 2 * sum(self.coeffs[1:])

    def terms(self) -> Dict[int, int]:
        g = self.degree
        return {m: self.coefficient(m) for m in range(-g, g + 1) if self.coefficient(m)}

    def __str__(self) -> str:
        parts = []
        for m in range(self.degree, -self.degree - 1, -1):
            a = self.coefficient(m)
            if a:
                mono = "" if m == 0 else ("t" if m == 1 else f"t^{m}")
                coef = str(a) if (mono == "" or abs(a) != 1) else ("-" if a < 0 else "")
                parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class VSequence:
    """``V_0, V_1, ...`` (zero past the stored values) together with the slice genus."""

    values: Tuple[int, ...]
    g4: int

    def __post_init__(self):
        v = list(self.values)
        while v and v[-1] == 0:
            v.pop()
        object.__setattr__(self, "values", tuple(int(x) for x in v))

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        return self.values[i] if i < len(self.values) else 0

    def check(self) -> "VSequence":
        """Raise :class:`VInvariantViolated` unless the monotonicity and genus bounds hold."""
        g = self.g4
        if g < 0:
            raise VInvariantViolated(f"negative slice genus {g}", 0)
        n = max(len(self.values), g) + 1
        for i in range(n):
            vi = self[i]
            if vi < 0:
                raise VInvariantViolated(f"V_{i} = {vi} < 0", i)
            if not vi - 1 <= self[i + 1] <= vi:
                raise VInvariantViolated(
                    f"V_{i} - 1 <= V_{i + 1} <= V_{i} fails: V_{i} = {vi}, V_{i + 1} = {self[i + 1]}", i)
            if i < g and vi > -(-(g - i) // 2):
                raise VInvariantViolated(f"V_{i} = {vi} exceeds ceil(({g} - {i})/2)", i)
            if i >= g and vi != 0:
                raise VInvariantViolated(f"V_{i} = {vi} but i >= g4 = {g}", i)
        return self


@dataclass(frozen=True)
class KnotModel:
    name: str
    slice_genus: int
    alexander: Optional[AlexanderPolynomial] = None
    genus: Optional[int] = None
    l_space: bool = False
    v_explicit: Optional[Tuple[int, ...]] = field(default=None)

    def __post_init__(self):
        if self.v_explicit is None and not (self.l_space and self.alexander is not None):
            raise MissingVData(f"{self.name}: need v_sequence, or l_space with an Alexander polynomial")


def _field(doc: Mapping[str, Any], key: str, kind, required=True, default=None):
    if key not in doc:
        if required:
            raise DocumentError("missing", key)
        return default
    val = doc[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise DocumentError(f"expected integer, got {val!r}", key)
    if kind is bool and not isinstance(val, bool):
        raise DocumentError(f"expected boolean, got {val!r}", key)
    if kind is str and not isinstance(val, str):
        raise DocumentError(f"expected string, got {val!r}", key)
    return val


def parse_knot(document) -> KnotModel:
    """Build a :class:`KnotModel` from a dict or a JSON string.

    ``alexander`` lists ``[m, a_m]`` pairs for ``m >= 0``; the negative side
    is implied by symmetry.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                                "<document>") from exc
    if not isinstance(document, Mapping):
        raise DocumentError("expected a JSON object", "<document>")
    name = _field(document, "name", str, required=False, default="knot")
    g4 = _field(document, "slice_genus", int)
    if g4 < 0:
        raise DocumentError("must be non-negative", "slice_genus")
    l_space = _field(document, "l_space", bool, required=False, default=False)
    genus = _field(document, "genus", int, required=False)

    alex = None
    if "alexander" in document:
        raw = document["alexander"]
        if not isinstance(raw, list):
            raise DocumentError("expected a list of [m, a_m] pairs", "alexander")
        terms: Dict[int, int] = {}
        for k, pair in enumerate(raw):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
                raise DocumentError(f"entry {k} is not an integer pair", "alexander")
            m, a = pair
            if m in terms:
                raise DocumentError(f"exponent {m} listed twice", "alexander")
            terms[m] = a
        alex = AlexanderPolynomial.from_terms(terms)

    v = None
    if "v_sequence" in document:
        raw = document["v_sequence"]
        if not isinstance(raw, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
            raise DocumentError("expected a list of integers", "v_sequence")
        v = tuple(raw)
    return KnotModel(name=name, slice_genus=g4, alexander=alex, genus=genus,
                     l_space=l_space, v_explicit=v)


def load_knot(path) -> KnotModel:
    with open(path) as fh:
        return parse_knot(fh.read())


def _polydiv(num: List[int], den: List[int]) -> List[int]:
    """Exact quotient of integer polynomials (coefficient lists, constant term first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def torus_alexander(p: int, q: int) -> AlexanderPolynomial:
    """Alexander polynomial of the torus knot ``T(p, q)``."""
    if p < 2 or q < 2:
        raise ValueError("p, q must be at least 2")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")

    def binom(k):  # t^k - 1
        return [-1] + [0] * (k - 1) + [1]

    num = _polydiv(binom(p * q), binom(p))
    num = [a - b for a, b in zip([0] + num, num + [0])]  # times (t - 1)
    poly = _polydiv(num, binom(q))
    g = (len(poly) - 1) // 2
    return AlexanderPolynomial(tuple(poly[g:]))


def torsion_coefficients(delta: AlexanderPolynomial) -> Tuple[int, ...]:
    """``t_i = sum_{j >= 1} j * a_{i+j}`` for ``0 <= i <= deg``."""
    g = delta.degree
    return tuple(sum(j * delta.coefficient(i + j) for j in range(1, g - i + 1)) for i in range(g + 1))


def v_sequence(knot: KnotModel) -> VSequence:
    derived = None
    if knot.l_space and knot.alexander is not None:
        derived = VSequence(torsion_coefficients(knot.alexander), knot.alexander.degree)
        if knot.slice_genus != knot.alexander.degree:
            warnings.warn(f"{knot.name}: slice_genus {knot.slice_genus} differs from deg(Delta) "
                          f"{knot.alexander.degree}; using deg(Delta) for an L-space knot")
    if knot.v_explicit is not None:
        explicit = VSequence(knot.v_explicit, knot.slice_genus)
        if derived is not None and derived.values != explicit.values:
            warnings.warn(f"{knot.name}: explicit V {explicit.values} disagrees with "
                          f"torsion coefficients {derived.values}; using the explicit one")
        return explicit.check()
    if derived is None:
        raise MissingVData(knot.name)
    return derived.check()


def delta_second_derivative(delta: AlexanderPolynomial) -> int:
    """``Delta''(1) = sum_m m (m - 1) a_m``."""
    return sum(m * (m - 1) * a for m, a in delta.terms().items())


UNKNOT = KnotModel("unknot", 0, AlexanderPolynomial((1,)), genus=0, l_space=True)


def torus_knot(p: int, q: int) -> KnotModel:
    """Positive torus knot as an L-space knot model."""
    delta = torus_alexander(p, q)
    g = (p - 1) * (q - 1) // 2
    return KnotModel(f"T({p},{q})", g, delta, genus=g, l_space=True)
