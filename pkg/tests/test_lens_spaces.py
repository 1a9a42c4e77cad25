from collections import Counter
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from surgery_lattices.lattice_core import char_coset_minima, split_standard
from surgery_lattices.lens_spaces import (
    IndexOutOfRange, LensSpace, NotCoprime, conjugate_index, d_lens, d_lens_n1,
    evaluate_continued_fraction, linear_lattice, neg_continued_fraction)


@st.composite
def coprime_pq(draw, pmax=80):
    p = draw(st.integers(2, pmax))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(p, q) == 1))
    return p, q


def test_continued_fraction_examples():
    assert neg_continued_fraction(3, 1) == [3]
    assert neg_continued_fraction(1, 3) == [1, 2, 2]
    assert neg_continued_fraction(11, 4) == [3, 4]
    with pytest.raises(NotCoprime):
        neg_continued_fraction(6, 4)


@given(coprime_pq(300))
def test_continued_fraction_round_trip(pq):
    p, q = pq
    cf = neg_continued_fraction(p, q)
    assert evaluate_continued_fraction(cf) == Fraction(p, q)
    assert all(a >= 2 for a in cf)


def test_linear_lattice_examples():
    assert linear_lattice(3, 1).gram == ((3,),)
    lat = linear_lattice(11, 4)
    assert lat.gram == ((3, -1), (-1, 4)) and lat.det == 11
    for n in range(2, 30):
        assert linear_lattice(n, 1).gram == ((n,),)


@pytest.mark.parametrize("p", [2, 3, 17, 64, 127, 200])
def test_linear_lattice_det(p):
    for q in range(1, p):
        if gcd(p, q) == 1:
            assert linear_lattice(p, q).det == p


def test_d_lens_n1_examples():
    assert d_lens_n1(3, 0) == Fraction(1, 2)
    assert d_lens_n1(3, 1) == Fraction(-1, 6)
    assert d_lens_n1(8, 4) == Fraction(-1, 4)
    with pytest.raises(IndexOutOfRange):
        d_lens_n1(3, 3)


def test_d_lens_matches_closed_form():
    for n in range(1, 60):
        assert [d_lens(n, 1, i) for i in range(n)] == [d_lens_n1(n, i) for i in range(n)]


def test_d_lens_base_and_small():
    assert d_lens(1, 1, 0) == 0
    assert sorted(d_lens(3, 2, i) for i in range(3)) == [Fraction(-1, 2), Fraction(1, 6), Fraction(1, 6)]
    minus = Counter(-d_lens(3, 1, i) for i in range(3))
    assert Counter(d_lens(3, 2, i) for i in range(3)) == minus


@settings(max_examples=80)
@given(coprime_pq())
def test_orientation_reversal_negates_multiset(pq):
    p, q = pq
    a = Counter(d_lens(p, q, i) for i in range(p))
    b = Counter(-d_lens(p, p - q, i) for i in range(p))
    assert a == b
    assert Counter(d_lens(p, p - q, i, "reversed") for i in range(p)) == Counter(-d_lens(p, q, i) for i in range(p))


@settings(max_examples=80)
@given(coprime_pq())
def test_lens_homeomorphism_invariance(pq):
    # L(p, q) = L(p, q') when q q' = 1 mod p
    p, q = pq
    q2 = pow(q, -1, p)
    assert Counter(d_lens(p, q, i) for i in range(p)) == Counter(d_lens(p, q2, i) for i in range(p))


@settings(max_examples=80)
@given(coprime_pq())
def test_conjugation_symmetry_and_denominator(pq):
    p, q = pq
    vals = [d_lens(p, q, i) for i in range(p)]
    for i, v in enumerate(vals):
        assert vals[conjugate_index(p, q, i)] == v
        assert (4 * p) % v.denominator == 0


@settings(max_examples=40, deadline=None)
@given(coprime_pq(40))
def test_sharp_plumbing_oracle(pq):
    # -Lambda(p, q) is sharp: max (c^2 + r)/4 over char cosets of its negative gives d(L(p, -q))
    p, q = pq
    lat = linear_lattice(p, q)
    sharp = Counter((lat.rank - m) / 4 for m in char_coset_minima(lat).minima)
    assert sharp == Counter(-d_lens(p, q, i) for i in range(p))


@given(coprime_pq(120))
def test_unit_vector_iff_coefficient_one(pq):
    p, q = pq
    has_one = 1 in neg_continued_fraction(p, q)
    lat = linear_lattice(p, q)
    from surgery_lattices.lattice_core import unit_vector
    assert (unit_vector(lat) is not None) == has_one


def test_lambda_2n_plus_1_4_has_no_unit_vector():
    from surgery_lattices.lattice_core import unit_vector
    for n in range(2, 20):
        assert unit_vector(linear_lattice(2 * n + 1, 4)) is None


def test_lens_space_record():
    assert LensSpace.from_slope(5, -2) == LensSpace(5, 3, "reversed")
    assert LensSpace.from_slope(5, -2).d_values() == [-d_lens(5, 2, i) for i in range(5)]
    assert LensSpace.from_slope(7, 9) == LensSpace(7, 2)
    assert LensSpace(5, 2).d_values() == [d_lens(5, 2, i) for i in range(5)]
    with pytest.raises(NotCoprime):
        d_lens(4, 2, 0)
