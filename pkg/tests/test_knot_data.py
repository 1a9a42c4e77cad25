import json
import warnings

import pytest
import sympy
from hypothesis import given, strategies as st

from surgery_lattices.knot_data import (
    UNKNOT, AlexanderPolynomial, AsymmetricAlexander, DocumentError, MissingVData, NotNormalized,
    VInvariantViolated, VSequence, delta_second_derivative, load_knot, parse_knot,
    torsion_coefficients, torus_alexander, torus_knot, v_sequence)

t = sympy.symbols("t")

TREFOIL = {"name": "T(2,3)", "slice_genus": 1, "l_space": True, "alexander": [[0, -1], [1, 1]]}


def sympy_torus(p, q):
    """Symmetric coefficients of (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)) via sympy."""
    poly = sympy.Poly(sympy.cancel((t**(p * q) - 1) * (t - 1) / ((t**p - 1) * (t**q - 1))), t)
    coeffs = poly.all_coeffs()[::-1]
    g = (len(coeffs) - 1) // 2
    return tuple(int(c) for c in coeffs[g:])


def test_parse_examples():
    k = parse_knot({"name": "unknot", "slice_genus": 0, "alexander": [[0, 1]], "l_space": True})
    assert v_sequence(k).values == ()
    k = parse_knot(TREFOIL)
    assert k.alexander.coeffs == (-1, 1)
    with pytest.raises(NotNormalized):
        parse_knot({"slice_genus": 1, "l_space": True, "alexander": [[1, 1]]})


def test_parse_errors_name_field():
    with pytest.raises(DocumentError) as e:
        parse_knot({"l_space": True})
    assert e.value.field == "slice_genus"
    with pytest.raises(DocumentError) as e:
        parse_knot({"slice_genus": 1, "alexander": [[0, "x"]], "l_space": True})
    assert e.value.field == "alexander"
    with pytest.raises(DocumentError) as e:
        parse_knot('{"slice_genus": 1,\n "alexander": [}')
    assert "line 2" in str(e.value)
    with pytest.raises(AsymmetricAlexander):
        AlexanderPolynomial.from_terms({1: 1, 0: -1, -1: 2})
    with pytest.raises(MissingVData):
        parse_knot({"slice_genus": 1})


def test_load_knot(data_dir):
    assert load_knot(data_dir / "trefoil.json").name == "T(2,3)"
    assert json.loads((data_dir / "t25.json").read_text())["slice_genus"] == 2


def test_torus_alexander_examples():
    assert str(torus_alexander(2, 3)) == "t - 1 + t^-1"
    assert str(torus_alexander(2, 5)) == "t^2 - t + 1 - t^-1 + t^-2"
    assert torus_alexander(2, 7).coeffs == (-1, 1, -1, 1)


@pytest.mark.parametrize("p,q", [(2, 3), (2, 9), (3, 4), (3, 7), (4, 5), (5, 6), (2, 15)])
def test_torus_alexander_vs_sympy(p, q):
    d = torus_alexander(p, q)
    assert d.coeffs == sympy_torus(p, q)
    assert d.at_one() == 1
    assert d.degree == (p - 1) * (q - 1) // 2


def test_torsion_examples():
    assert torsion_coefficients(AlexanderPolynomial((1,))) == (0,)
    assert torsion_coefficients(torus_alexander(2, 3)) == (1, 0)
    assert torsion_coefficients(torus_alexander(2, 5)) == (1, 1, 0)


def test_v_sequence_examples():
    assert v_sequence(UNKNOT).values == ()
    v = v_sequence(parse_knot(TREFOIL))
    assert (v.values, v.g4) == ((1,), 1)
    v = v_sequence(torus_knot(2, 5))
    assert (v.values, v.g4) == ((1, 1), 2)


def test_explicit_v_wins_with_warning():
    doc = dict(TREFOIL, v_sequence=[0])
    with pytest.warns(UserWarning):
        assert v_sequence(parse_knot(doc)).values == ()


def test_v_invariants_checked():
    with pytest.raises(VInvariantViolated) as e:
        VSequence((2,), 1).check()
    assert e.value.index == 0
    with pytest.raises(VInvariantViolated):
        VSequence((1, 3), 4).check()
    with pytest.raises(VInvariantViolated):
        VSequence((0, 0, 1), 4).check()


@pytest.mark.parametrize("q", range(3, 17, 2))
def test_torus_v_sequences_respect_bounds(q):
    v = v_sequence(torus_knot(2, q))
    assert v.check() is v


def test_delta2_examples():
    assert delta_second_derivative(AlexanderPolynomial((1,))) == 0
    assert delta_second_derivative(torus_alexander(2, 3)) == 2
    assert delta_second_derivative(torus_alexander(2, 5)) == 6


@pytest.mark.parametrize("p,q", [(2, 3), (2, 11), (3, 5), (4, 7)])
def test_delta2_vs_sympy_derivative(p, q):
    d = torus_alexander(p, q)
    expr = sum(a * t**m for m, a in d.terms().items())
    assert delta_second_derivative(d) == sympy.diff(expr, t, 2).subs(t, 1)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_delta2_double_counting(tail):
    a0 = 1 - 2 * sum(tail)
    d = AlexanderPolynomial((a0, *tail))
    ts = torsion_coefficients(d)
    assert delta_second_derivative(d) == 2 * (ts[0] + 2 * sum(ts[1:]))
