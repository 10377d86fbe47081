import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertex_dwbc.efp import phi_jet
from vertex_dwbc.errors import DivisionByZeroJet
from vertex_dwbc.jets import Jet

ETA = 0.8


def test_sh_series_at_zero():
    j = Jet.sh_shift(0.0, 3)
    assert [complex(c) for c in j.coeffs] == pytest.approx([0, 1, 0, 1 / 6])


def test_exact_zero_has_valuation_one():
    j = Jet.sh_shift(0.0, 4, exact_zero=True)
    assert j.val == 1
    assert j.coeff(0) == 0
    assert j.coeff(3) == pytest.approx(1 / 6)


def test_phi_first_derivative():
    z = 0.3 + 0.1j
    expected = -4 * mpmath.sinh(2 * z) * math.sinh(ETA) / (mpmath.cosh(2 * z) - math.cosh(ETA)) ** 2
    assert abs(phi_jet(z, ETA, 3).coeff(1) - complex(expected)) <= 1e-13


def test_phi_value():
    z = 0.2
    assert abs(phi_jet(z, ETA, 2).coeff(0) - 2 * math.sinh(ETA) / (math.cosh(2 * z) - math.cosh(ETA))) <= 1e-13


cplx = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(a=cplx, b=cplx)
def test_product_rule_consistency(a, b):
    # sh(a+t) sh(b+t) = (ch(a+b+2t) - ch(a-b)) / 2
    order = 6
    lhs = Jet.sh_shift(a, order) * Jet.sh_shift(b, order)
    two_t = Jet.variable(0.0, order) * 2 + (a + b)
    ch_part = (two_t.compose_sh().derivative() * 0.25).truncate(order - 1)
    for n in range(order - 1):
        rhs = ch_part.coeff(n) - (mpmath.cosh(a - b) / 2 if n == 0 else 0)
        assert abs(complex(lhs.coeff(n)) - complex(rhs)) <= 1e-13


@settings(max_examples=40, deadline=None)
@given(a=cplx, b=cplx)
def test_division_inverts_multiplication(a, b):
    f = Jet.sh_shift(a, 5) + 2.0
    g = Jet.sh_shift(b, 5) + 3.0
    back = (f * g) / g
    for n in range(6):
        assert abs(back.coeff(n) - f.coeff(n)) <= 1e-12


def test_laurent_division():
    # t / sh(t)^2 has a simple pole with residue 1
    t = Jet.variable(0.0, 6)
    q = t / (Jet.sh_shift(0.0, 6, exact_zero=True) ** 2)
    assert q.coeff(-2) == 0
    assert q.coeff(-1) == pytest.approx(1)
    assert q.coeff(0) == pytest.approx(0)
    assert q.coeff(1) == pytest.approx(-1 / 3)


def test_derivative_value_and_pow():
    j = Jet.sh_shift(0.5, 6)
    assert j.derivative_value(3) == pytest.approx(math.cosh(0.5))
    assert (j**0).coeff(0) == 1
    assert (j**2).coeff(0) == pytest.approx(math.sinh(0.5) ** 2)


def test_division_by_zero_jet():
    with pytest.raises(DivisionByZeroJet):
        Jet.constant(1.0, 3) / Jet(0.0, (0.0, 1.0, 0.0))


def test_coefficient_beyond_precision():
    with pytest.raises(ValueError):
        Jet.sh_shift(0.1, 2).coeff(3)


def test_mpmath_coefficients():
    with mpmath.workdps(40):
        j = Jet.sh_shift(mpmath.mpf("0.25"), 4)
        assert isinstance(j.coeffs[0], mpmath.mpf)
        assert abs(j.coeff(4) - mpmath.sinh(mpmath.mpf("0.25")) / 24) < mpmath.mpf(10) ** -35
