import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, cyclotomic_poly as sympy_cyclotomic, symbols

from parorb.cyclotomic import CycloNumber, cyclotomic_poly, reduce_mod_phi
from parorb.errors import NonIntegral

x = symbols("x")


@pytest.mark.parametrize("n", list(range(1, 40)) + [60, 105])
def test_cyclotomic_polynomials_match_sympy(n):
    want = Poly(sympy_cyclotomic(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(n)) == [int(c) for c in want]


@st.composite
def cyclo(draw, levels=(1, 2, 3, 4, 5, 6, 8, 9, 12)):
    n = draw(st.sampled_from(levels))
    return CycloNumber(n, draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n)))


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


@settings(max_examples=200, deadline=None)
@given(cyclo(), cyclo())
def test_arithmetic_matches_complex_numbers(a, b):
    assert close((a + b).to_complex(), a.to_complex() + b.to_complex())
    assert close((a - b).to_complex(), a.to_complex() - b.to_complex())
    assert close((a * b).to_complex(), a.to_complex() * b.to_complex())
    assert close(a.conj().to_complex(), a.to_complex().conjugate())
    assert (a == b) == close(a.to_complex(), b.to_complex())


@settings(max_examples=100, deadline=None)
@given(cyclo(), st.sampled_from([1, 2, 3]))
def test_level_change_preserves_value(a, k):
    assert a.at_level(a.level * k) == a
    assert close(a.at_level(a.level * k).to_complex(), a.to_complex())


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=30), st.sampled_from([3, 4, 5, 6, 7, 12]))
def test_reduction_preserves_value(coeffs, n):
    z = cmath.exp(2j * cmath.pi / n)
    red = reduce_mod_phi(coeffs, n)
    assert close(sum(c * z ** k for k, c in enumerate(coeffs)), sum(c * z ** k for k, c in enumerate(red)))


def test_roots_of_unity():
    z3 = CycloNumber.root(Fraction(1, 3))
    assert z3 + z3 * z3 == CycloNumber.integer(-1)
    assert (z3 + z3 * z3).to_rational_integer() == -1
    assert CycloNumber.root(Fraction(1, 2)) == CycloNumber.integer(-1)
    assert CycloNumber.root(Fraction(5, 4)) == CycloNumber.root(Fraction(1, 4))
    i = CycloNumber.root(Fraction(1, 4))
    assert (i * i + CycloNumber.integer(1)).is_zero()


def test_non_integral_value():
    with pytest.raises(NonIntegral):
        CycloNumber.root(Fraction(1, 3)).to_rational_integer()


def test_unhashable_and_json():
    with pytest.raises(TypeError):
        hash(CycloNumber.integer(1))
    assert CycloNumber.integer(4).to_json() == 4
    assert isinstance(CycloNumber.root(Fraction(1, 3)).to_json(), dict)
