import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from surgery_lattices._exact import inverse
from surgery_lattices.enumeration import closest_vector, vectors_up_to


def q(a, x):
    return sum(x[i] * a[i][j] * x[j] for i in range(len(a)) for j in range(len(a)))


def test_closest_vector_simple():
    a = [[2, 1], [1, 2]]
    val, t = closest_vector(a, [Fraction(1, 2), Fraction(0)])
    brute = min(q(a, [x - Fraction(1, 2), y]) for x in range(-3, 4) for y in range(-3, 4))
    assert val == brute


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=3, max_size=3), st.integers(-2, 2),
       st.lists(st.fractions(-3, 3, max_denominator=5), min_size=2, max_size=2))
def test_closest_vector_vs_box(diag, off, y):
    a = [[diag[0] + abs(off), off], [off, diag[1] + abs(off)]]
    val, t = closest_vector(a, y)
    best = min(q(a, [x0 - y[0], x1 - y[1]]) for x0 in range(-8, 9) for x1 in range(-8, 9))
    assert val == best
    assert q(a, [t[0] - y[0], t[1] - y[1]]) == val


def test_vectors_up_to_counts():
    # the A2 root lattice has six minimal vectors of norm 2
    pts = [t for t, v in vectors_up_to([[2, -1], [-1, 2]], 2) if v == 2]
    assert len(pts) == 6
    assert sorted(v for _, v in vectors_up_to([[1]], 4)) == [0, 1, 1, 4, 4]
