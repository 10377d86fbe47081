import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertex_dwbc.errors import SingularWeight
from vertex_dwbc.weights import (
    ModelParams6,
    ModelParams19,
    as_complex,
    check_generic,
    fg,
    genericity_violations,
    is_generic,
    phi,
    sample_generic_params,
    sample_generic_params19,
    sh,
    wa,
    wb,
    weight,
)

ETA = 0.8


def test_single_weights_at_half_eta():
    assert abs(wa(ETA / 2, 0, ETA) - math.sinh(ETA)) < 1e-15
    assert abs(wb(ETA / 2, 0, ETA)) < 1e-15
    assert weight("c", 0.3, 0.1, ETA) == pytest.approx(math.sinh(ETA))


def test_unknown_weight_kind():
    with pytest.raises(ValueError):
        weight("q", 0, 0, ETA)


def test_mpmath_dispatch():
    x = mpmath.mpc("0.3", "0.1")
    assert isinstance(sh(x), mpmath.mpc)
    assert abs(complex(sh(x)) - sh(0.3 + 0.1j)) < 1e-15


@pytest.mark.parametrize("value,expected", [([0.5, -1], 0.5 - 1j), ("0.6+0.3j", 0.6 + 0.3j), ("0.6+0.3i", 0.6 + 0.3j), (2, 2 + 0j)])
def test_as_complex(value, expected):
    assert as_complex(value) == expected


def test_phi_raises_near_pole():
    with pytest.raises(SingularWeight):
        phi(ETA / 2, 0, ETA)


def test_fg_raises_at_coincidence():
    with pytest.raises(SingularWeight):
        fg(0.2, 0.2, ETA)


def test_params_length_mismatch():
    with pytest.raises(ValueError):
        ModelParams6(ETA, [0.1, 0.2], [0.3])
    with pytest.raises(ValueError):
        ModelParams19(ETA, [0.1], [])


def test_sampling_is_deterministic():
    assert sample_generic_params(4, 11) == sample_generic_params(4, 11)
    assert sample_generic_params(4, 11) != sample_generic_params(4, 12)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 5), seed=st.integers(0, 2**32))
def test_sampled_params_are_generic(n, seed):
    p = sample_generic_params(n, seed)
    assert is_generic(p)
    for x in p.lambdas + p.nus:
        assert abs(x.real) <= 0.5 and abs(x.imag) <= 0.5


@settings(max_examples=15, deadline=None)
@given(n=st.integers(1, 3), seed=st.integers(0, 2**32))
def test_sampled_spin1_params_double_generically(n, seed):
    from vertex_dwbc.fusion import doubled_params

    p = sample_generic_params19(n, seed)
    check_generic(doubled_params(p), relaxed=True)


def test_doubled_rows_violate_strict_genericity_only():
    from vertex_dwbc.fusion import doubled_params

    d = doubled_params(sample_generic_params19(2, 5))
    strict = genericity_violations(d)
    assert strict and all("+ eta" in v for v in strict)
    assert is_generic(d, relaxed=True)


def test_shift_invariance_of_generic_set():
    p = sample_generic_params(3, 2)
    assert is_generic(p.shifted(0.37 - 0.1j))
