from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.field import FieldError, euler_phi, make_field

mpmath.mp.prec = 200

FIELDS = [2, 3, 4, 5, 6, 7, 12, 20]


def _value(x) -> mpmath.mpf:
    g = 2 * mpmath.cos(mpmath.pi / x.field.L)
    return sum(mpmath.mpf(c.numerator) / c.denominator * g**i for i, c in enumerate(x.coeffs))


def elements(F):
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
    return st.lists(coeff, min_size=F.degree, max_size=F.degree).map(F.from_coeffs)


@pytest.mark.parametrize("L", FIELDS)
def test_degree_is_half_totient(L):
    F = make_field(L)
    assert F.degree == max(1, euler_phi(2 * L) // 2)


@pytest.mark.parametrize("L", FIELDS)
def test_minpoly_matches_sympy(L):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / L), x), x)
    ours = list(make_field(L).minpoly)
    assert [int(c) for c in reversed(ref.all_coeffs())] == ours


@pytest.mark.parametrize("L", FIELDS)
def test_generator_value(L):
    F = make_field(L)
    assert abs(float(F.gen) - 2 * math.cos(math.pi / L)) < 1e-14


@pytest.mark.parametrize("m", [2, 4, 5, 10, 20])
def test_cos_pi_over(m):
    F = make_field(20)
    assert abs(float(F.cos_pi_over(m)) - math.cos(math.pi / m)) < 1e-14


def test_cos_outside_field_rejected():
    with pytest.raises(FieldError):
        make_field(12).cos_pi_over(5)


def test_golden_ratio_identity():
    F = make_field(5)
    phi = F.gen  # 2cos(pi/5) is the golden ratio
    assert phi * phi == phi + 1


def test_sqrt2_identity():
    F = make_field(4)
    assert F.gen * F.gen == F.element(2)


F20 = make_field(20)
F7 = make_field(7)


@settings(max_examples=60, deadline=None)
@given(elements(F20), elements(F20), elements(F20))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == F20.zero


@settings(max_examples=60, deadline=None)
@given(elements(F7))
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == F7.one


@settings(max_examples=100, deadline=None)
@given(elements(F20))
def test_sign_agrees_with_high_precision(a):
    v = _value(a)
    expected = 0 if a.is_zero() else (1 if v > 0 else -1)
    assert a.sign() == expected


@settings(max_examples=60, deadline=None)
@given(elements(F7), elements(F7))
def test_sign_is_multiplicative(a, b):
    assert (a * b).sign() == a.sign() * b.sign()


def test_tiny_difference_sign():
    # 2cos(pi/20) minus a rational approximation good to about 1e-12
    approx = Fraction(2 * math.cos(math.pi / 20)).limit_denominator(10**6)
    d = F20.gen - F20.element(approx)
    assert d.sign() == (1 if _value(F20.gen) > mpmath.mpf(approx.numerator) / approx.denominator else -1)
