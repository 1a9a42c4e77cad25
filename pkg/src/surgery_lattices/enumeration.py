"""Exact Fincke-Pohst style search for positive definite quadratic forms.

Both routines work on a form ``q(t) = (t - y)^T A (t - y)`` over integer
vectors ``t`` with ``A`` a positive definite rational matrix.  The form is
split with :func:`reversed_ldl` so coordinate 0 is chosen first, which
makes "first minimizer found in ascending order" the same thing as
"lexicographically smallest minimizer".

Internally every term is scaled by one common integer so the search runs
on Python ints; results are handed back as exact ``Fraction`` values.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ._exact import reversed_ldl


@lru_cache(maxsize=256)
def _factor(a: Tuple[Tuple, ...]):
    r = len(a)
    c, d = reversed_ldl(a)
    links = [tuple((j, c[k][j]) for j in range(k) if c[k][j] != 0) for k in range(r)]
    # deps[k]: earlier coordinates that still influence terms k, k+1, ...
    last_use = {}
    for k in range(r):
        for j, _ in links[k]:
            last_use[j] = k
    deps = [tuple(j for j in range(k) if last_use.get(j, -1) >= k) for k in range(r)]
    return d, links, deps


class _Form:
    """Term ``k`` equals ``w[k] * (t_k * e[k] - num_k(t))**2 / scale`` with integer data.

    ``num_k(t) = base[k] - sum_j coef[k][j] * t_j`` is ``e[k]`` times the
    conditional center of coordinate ``k``.
    """

    def __init__(self, a: Sequence[Sequence], y: Sequence):
        self.r = r = len(a)
        d, links, self.deps = _factor(tuple(tuple(row) for row in a))
        y = [Fraction(v) for v in y]
        centers = []  # (constant, [(j, coefficient of t_j)])
        for k in range(r):
            const = y[k] + sum(ckj * y[j] for j, ckj in links[k])
            centers.append((const, [(j, -ckj) for j, ckj in links[k]]))
        e = [lcm(const.denominator, *(cf.denominator for _, cf in lin)) for const, lin in centers]
        self.scale = lcm(*(dk.denominator * ek * ek for dk, ek in zip(d, e))) if r else 1
        self.e = e
        self.w = [dk.numerator * (self.scale // (dk.denominator * ek * ek)) for dk, ek in zip(d, e)]
        self.base = [int(const * ek) for (const, _), ek in zip(centers, e)]
        self.coef = [tuple((j, int(cf * ek)) for j, cf in lin) for (_, lin), ek in zip(centers, e)]

    def num(self, k: int, t: Sequence[int]) -> int:
        return self.base[k] + sum(cf * t[j] for j, cf in self.coef[k])

    def candidates(self, k: int, t: Sequence[int], budget: int):
        """``(t_k, scaled term)`` with term <= budget, nearest to the center first."""
        if budget < 0:
            return []
        w, e, n = self.w[k], self.e[k], self.num(k, t)
        s = isqrt(budget // w)
        lo, hi = -((s - n) // e), (n + s) // e
        out = []
        for tk in range(lo, hi + 1):
            off = tk * e - n
            term = w * off * off
            if term <= budget:
                out.append((abs(off), tk, term))
        out.sort()
        return [(tk, term) for _, tk, term in out]

    def scaled_value(self, t: Sequence[int]) -> int:
        return sum(self.w[k] * (t[k] * self.e[k] - self.num(k, t)) ** 2 for k in range(self.r))

    def babai(self) -> List[int]:
        t = [0] * self.r
        for k in range(self.r):
            n, e = self.num(k, t), self.e[k]
            t[k] = (2 * n + e) // (2 * e)
        return t


def closest_vector(a: Sequence[Sequence], y: Sequence,
                   radius: Optional[Fraction] = None) -> Tuple[Fraction, Tuple[int, ...]]:
    """Minimize ``(t - y)^T a (t - y)`` over integer ``t``.

    Returns the exact minimum and the lexicographically smallest minimizer.
    ``radius`` must be an upper bound on the minimum if given; the search
    is seeded with the smaller of ``q(0)`` and the nearest-plane point.

    Subproblems are memoized on the coordinates they actually depend on,
    so banded forms (e.g. tridiagonal Gram matrices) cost time linear in
    the rank instead of exponential.
    """
    form = _Form(a, y)
    r = form.r
    if r == 0:
        return Fraction(0), ()
    bound = min(form.scaled_value([0] * r), form.scaled_value(form.babai()))
    if radius is not None:
        bound = min(bound, int(Fraction(radius) * form.scale))

    # memo[key] = (True, value, completion) | (False, known_lower_bound)
    memo: Dict[tuple, tuple] = {}
    t: List[int] = [0] * r
    deps = form.deps

    def solve(k: int, budget: int):
        if k == r:
            return 0, ()
        key = (k,) + tuple(t[j] for j in deps[k])
        hit = memo.get(key)
        if hit is not None:
            if hit[0]:
                return (hit[1], hit[2]) if hit[1] <= budget else None
            if hit[1] >= budget:
                return None
        best = None
        cur = budget
        for tk, term in form.candidates(k, t, cur):
            if term > cur:
                break
            t[k] = tk
            sub = solve(k + 1, cur - term)
            if sub is None:
                continue
            val = term + sub[0]
            if best is None or val < best[0] or (val == best[0] and tk < best[1][0]):
                best = (val, (tk,) + sub[1])
                cur = val
        t[k] = 0
        memo[key] = (True, best[0], best[1]) if best is not None else (False, budget)
        return best

    res = solve(0, bound)
    assert res is not None, "search radius did not contain a lattice point"
    return Fraction(res[0], form.scale), res[1]


def vectors_up_to(a: Sequence[Sequence], bound) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
    """Yield every integer ``t`` with ``t^T a t <= bound`` (zero included)."""
    form = _Form(a, [0] * len(a))
    r = form.r
    t = [0] * r
    top = Fraction(bound) * form.scale
    top = top.numerator // top.denominator

    def walk(k: int, budget: int):
        if k == r:
            yield tuple(t), Fraction(top - budget, form.scale)
            return
        for tk, term in form.candidates(k, t, budget):
            t[k] = tk
            yield from walk(k + 1, budget - term)
        t[k] = 0

    yield from walk(0, top)
