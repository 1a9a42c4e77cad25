"""Acceptance corpus and the batch checks behind ``verify-suite``.

Every check returns a :class:`CheckResult`; none of them raise on a
mathematical failure, so a driver can report all of them in one run.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import gcd
from typing import Callable, Dict, Iterator, List, Tuple

import numpy as np

from . import _exact
from .knot_data import (UNKNOT, VSequence, delta_second_derivative, torsion_coefficients,
                        torus_knot, v_sequence)
from .lattice_core import (AssertionViolated, GramLattice, NotPositiveDefinite, diagonal_lattice,
                           make_lattice, min_char_norm, owens_strle_check, shifted_min, split_standard,
                           standard_lattice)
from .lens_spaces import d_lens, d_lens_n1, linear_lattice
from .surgery_obstructions import (MODES, beta_bound_check, d_sum_defect, d_table, l_upper_bound,
                                   lattice_obstruction, lens_table, max_sum, sharpness_check)

RANDOM_SEED = 20240607


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.1f}s)"


# -- corpus ----------------------------------------------------------------

def linear_corpus(pmax: int = 50) -> List[GramLattice]:
    return [linear_lattice(p, q) for p in range(2, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


def diagonal_corpus(rmax: int = 4, amax: int = 9) -> List[GramLattice]:
    return [diagonal_lattice(*a) for r in range(1, rmax + 1)
            for a in combinations_with_replacement(range(1, amax + 1), r)]


def random_corpus(count: int = 200, rmax: int = 4, emax: int = 6,
                  seed: int = RANDOM_SEED) -> List[GramLattice]:
    """Random positive definite symmetric matrices with entries in ``[-emax, emax]``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.randint(1, rmax)
        g = [[0] * r for _ in range(r)]
        for i in range(r):
            g[i][i] = rng.randint(1, emax)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-emax, emax)
        try:
            out.append(make_lattice(g))
        except NotPositiveDefinite:
            continue
    return out


@lru_cache(maxsize=1)
def full_corpus() -> Tuple[GramLattice, ...]:
    seen, out = set(), []
    for lat in linear_corpus() + diagonal_corpus() + random_corpus():
        if lat not in seen:
            seen.add(lat)
            out.append(lat)
    return tuple(out)


def admissible_v_sequences(g4: int) -> Iterator[VSequence]:
    """All sequences obeying the step rule and the slice genus bound."""
    def grow(prefix):
        i = len(prefix)
        if i == g4:
            if not prefix or prefix[-1] <= 1:
                yield VSequence(tuple(prefix), g4)
            return
        cap = -(-(g4 - i) // 2)
        options = range(cap + 1) if i == 0 else (prefix[-1] - 1, prefix[-1])
        for v in options:
            if 0 <= v <= cap:
                yield from grow(prefix + [v])
    yield from grow([])


# -- oracle ----------------------------------------------------------------

def brute_force_min_char_norm(lat: GramLattice) -> Fraction:
    """Minimum of ``Q*`` over characteristic ``xi`` with ``|xi_k| <= 2 r max|G|``.

    Plain exhaustive evaluation of ``xi^T adj(G) xi / det`` over the box,
    vectorized by splitting the coordinates into two halves.
    """
    r, delta = lat.rank, lat.det
    adj = np.array([[int(x * delta) for x in row] for row in lat.inverse], dtype=np.int64)
    box = 2 * r * max(abs(x) for row in lat.gram for x in row)
    axes = [np.arange(-box + ((box - d) % 2), box + 1, 2, dtype=np.int64) for d in lat.diagonal]
    h = (r + 1) // 2

    def grid(ax):
        if not ax:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(product(*ax)), dtype=np.int64)

    left, right = grid(axes[:h]), grid(axes[h:])
    a, b, c = adj[:h, :h], adj[:h, h:], adj[h:, h:]
    ql = np.einsum("ni,ij,nj->n", left, a, left)
    qr = np.einsum("ni,ij,nj->n", right, c, right)
    lb = 2 * left @ b
    best = None
    for start in range(0, len(left), 256):
        block = ql[start:start + 256, None] + qr[None, :] + lb[start:start + 256] @ right.T
        m = int(block.min())
        best = m if best is None else min(best, m)
    return Fraction(best, delta)


# -- checks ----------------------------------------------------------------

def check_lens_closed_form(nmax: int = 200):
    bad = [(n, i) for n in range(1, nmax + 1) for i in range(n) if d_lens(n, 1, i) != d_lens_n1(n, i)]
    return not bad, f"{sum(range(1, nmax + 1))} values, {len(bad)} mismatches" + (f", first {bad[0]}" if bad else "")


def check_owens_strle():
    corpus = full_corpus()
    bad = []
    for lat in corpus:
        try:
            owens_strle_check(lat)
        except AssertionViolated as exc:
            bad.append((lat.gram, str(exc)))
    return not bad, f"{len(corpus)} lattices, {len(bad)} violations" + (f", first {bad[0]}" if bad else "")


def check_enumeration_oracle():
    small = [lat for lat in full_corpus() if lat.rank <= 4]
    bad = []
    for lat in small:
        fast = shifted_min(lat, lat.diagonal, "2")[0]
        slow = brute_force_min_char_norm(lat)
        if fast != slow:
            bad.append((lat.gram, fast, slow))
    return not bad, f"{len(small)} lattices, {len(bad)} disagreements" + (f", first {bad[0]}" if bad else "")


def check_beta_sweep(gmax: int = 6, span: int = 40):
    count, bad = 0, []
    for g4 in range(gmax + 1):
        for V in admissible_v_sequences(g4):
            for n in range(4 * g4 + 4, 4 * g4 + 3 + span + 1):
                count += 1
                try:
                    if not beta_bound_check(V, n).holds:
                        bad.append((V.values, g4, n))
                except AssertionViolated:
                    bad.append((V.values, g4, n))
    return not bad, f"{count} (V, n) pairs, {len(bad)} failures"


def check_l_bounds():
    got = {"unknot": l_upper_bound(v_sequence(UNKNOT))}
    want = {"unknot": 0}
    for q in (3, 5, 7):
        V = v_sequence(torus_knot(2, q))
        got[f"T(2,{q})"] = l_upper_bound(V)
        want[f"T(2,{q})"] = 2 * q + 1
        assert 2 * q + 1 == 4 * V.g4 + 3
    return got == want, ", ".join(f"{k}={v}" for k, v in got.items())


def check_trefoil_negative_control(nmin: int = 8, nmax: int = 20):
    V = v_sequence(torus_knot(2, 3))
    pool = [lat for lat in full_corpus() if nmin <= lat.det <= nmax]
    pool += [standard_lattice(n, r) for n in range(nmin, nmax + 1) for r in (1, 2, 3)]
    bad, nstd, nnon = [], 0, 0
    for lat in pool:
        std = split_standard(lat).standard
        verdict = lattice_obstruction(lat, d_table(V, lat.det), "global").passed
        nstd += std
        nnon += not std
        if verdict != std:
            bad.append(lat.gram)
    return not bad, f"{nnon} non-standard failed, {nstd} standard passed, {len(bad)} exceptions"


def check_linear_sharpness(pmax: int = 30):
    count, bad = 0, []
    for p in range(2, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            count += 1
            if not sharpness_check(linear_lattice(p, q), lens_table(p, q).reversed(), "matching").passed:
                bad.append((p, q))
    return not bad, f"{count} lens spaces, {len(bad)} not sharp" + (f": {bad[:5]}" if bad else "")


def check_torus_lens_family():
    notes, ok = [], True
    for n in (3, 5, 7):
        p = 2 * n + 1
        table = d_table(v_sequence(torus_knot(2, n)), p)
        same = sorted(table.values) == sorted(d_lens(p, 4, i) for i in range(p))
        lat = linear_lattice(p, 4)
        obs = lattice_obstruction(lat, table, "affine")
        sharp = sharpness_check(lat, table.reversed(), "affine")
        ok &= same and obs.passed and sharp.passed
        notes.append(f"n={n}: multiset {'=' if same else '!='}, affine "
                     f"{obs.verdict}/{sharp.verdict} step={obs.witness and obs.witness['step']}")
    return ok, "; ".join(notes)


def check_d_sum_identity():
    count, bad = 0, []
    for g4 in range(5):
        for V in admissible_v_sequences(g4):
            for n in range(1, 4 * g4 + 41):
                count += 1
                if d_sum_defect(V, n) != -2 * max_sum(V, n):
                    bad.append(("sum", V.values, n))
    for q in range(3, 16, 2):
        K = torus_knot(2, q)
        V = v_sequence(K)
        d2 = delta_second_derivative(K.alexander)
        for n in range(2 * K.alexander.degree, 2 * K.alexander.degree + 21):
            count += 1
            if d_sum_defect(V, n) != -d2:
                bad.append(("delta2", q, n))
    for q in (3, 5):
        K = torus_knot(2, q)
        V = v_sequence(K)
        for n in range(5, 12):
            for mode in MODES:
                count += 1
                if sharpness_check(standard_lattice(n), d_table(V, n).reversed(), mode).passed:
                    bad.append(("sharp", q, n, mode))
    return not bad, f"{count} identities/sharpness checks, {len(bad)} failures" + (f", first {bad[0]}" if bad else "")


def check_delta_identity(qmax: int = 15):
    bad = []
    for q in range(3, qmax + 1, 2):
        delta = torus_knot(2, q).alexander
        t = torsion_coefficients(delta)
        if delta_second_derivative(delta) != 2 * (t[0] + 2 * sum(t[1:])):
            bad.append(q)
    return not bad, f"T(2,q) for odd q <= {qmax}, {len(bad)} failures"


CHECKS: List[Tuple[int, str, Callable]] = [
    (1, "lens recursion vs closed form (n <= 200)", check_lens_closed_form),
    (2, "characteristic bound on the lattice corpus", check_owens_strle),
    (3, "enumeration vs brute force (rank <= 4)", check_enumeration_oracle),
    (4, "beta bound beyond 4g4+3 (g4 <= 6)", check_beta_sweep),
    (5, "l upper bounds: unknot, T(2,3), T(2,5), T(2,7)", check_l_bounds),
    (6, "trefoil negative control, n in [8, 20]", check_trefoil_negative_control),
    (7, "linear plumbings are sharp (p <= 30)", check_linear_sharpness),
    (8, "S^3_{2n+1}(T(2,n)) vs L(2n+1,4)", check_torus_lens_family),
    (9, "d-sum identity and standard sharpness failures", check_d_sum_identity),
    (10, "Delta''(1) = 2 sum t_i on T(2,q)", check_delta_identity),
]


def run_check(number: int) -> CheckResult:
    num, name, fn = next(c for c in CHECKS if c[0] == number)
    start = time.perf_counter()
    passed, detail = fn()
    return CheckResult(num, name, bool(passed), detail, time.perf_counter() - start)


def run_all() -> List[CheckResult]:
    return [run_check(num) for num, _, _ in CHECKS]
