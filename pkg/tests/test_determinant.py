import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertex_dwbc.determinant import (
    SignData,
    corr6_closed,
    corr6_recursive,
    injective_tuples,
    z6_det,
    z6_recursion_residual,
    z6_recursion_sides,
)
from vertex_dwbc.errors import SingularWeight
from vertex_dwbc.lattice import CorrSpec, corr6_oracle, z6_oracle
from vertex_dwbc.weights import ModelParams6, sample_generic_params

from .conftest import rel_err


def test_z1():
    assert abs(z6_det(ModelParams6(0.8, [0.1], [0.4j])) - math.sinh(0.8)) <= 1e-14


def test_complex_eta():
    p = sample_generic_params(3, 9, eta=0.6 + 0.3j)
    assert rel_err(z6_det(p), z6_oracle(p)) <= 1e-10


def test_coinciding_rows_rejected():
    with pytest.raises(SingularWeight):
        z6_det(ModelParams6(0.8, [0.1, 0.1], [0.2, -0.3]))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(1, 5))
def test_det_equals_contraction(seed, n):
    p = sample_generic_params(n, seed)
    assert rel_err(z6_det(p), z6_oracle(p)) <= 1e-9


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 5), data=st.data())
def test_recursion(seed, n, data):
    p = sample_generic_params(n, seed)
    alpha = data.draw(st.integers(1, n))
    lhs, _ = z6_recursion_sides(p, alpha)
    assert z6_recursion_residual(p, alpha) <= 1e-9 * abs(lhs)


def test_recursion_needs_two_rows():
    with pytest.raises(ValueError):
        z6_recursion_sides(sample_generic_params(1, 0), 1)


def test_sign_data_is_a_sign():
    for alphas in itertools.permutations(range(1, 5), 3):
        assert SignData.of(list(alphas), "+-+", 4, 2).sign in (1, -1)


def test_injective_tuples_respect_pools():
    for alphas in injective_tuples("-+", 4, 2):
        assert alphas[0] < 2 <= alphas[1]


def test_empty_pattern():
    p = sample_generic_params(2, 1)
    assert corr6_closed(p, CorrSpec(1, "")) == 1
    assert corr6_recursive(p, CorrSpec(1, "")) == 1


def test_frozen_correlator():
    # direct contraction at seed 7, N = 3, r = 1, pattern (-, +)
    p = sample_generic_params(3, 7)
    ref = 0.012555830133104393 - 0.3871114741965507j
    spec = CorrSpec(1, "-+")
    assert rel_err(corr6_oracle(p, spec), ref) <= 1e-12
    assert rel_err(corr6_closed(p, spec), ref) <= 1e-10
    assert rel_err(corr6_recursive(p, spec), ref) <= 1e-10


@pytest.mark.parametrize("cancelled", [True, False])
def test_cancelled_and_direct_forms_agree(cancelled):
    p = sample_generic_params(3, 4)
    for r in range(4):
        for eps in itertools.product("+-", repeat=3):
            spec = CorrSpec(r, eps)
            a = corr6_closed(p, spec, cancelled=cancelled)
            b = corr6_oracle(p, spec)
            assert abs(a - b) <= 1e-10 + 1e-8 * abs(b)


def test_printed_pair_sign_disagrees():
    p = sample_generic_params(3, 4)
    spec = CorrSpec(1, "-+")
    good = corr6_closed(p, spec)
    bad = corr6_closed(p, spec, printed_sign=True)
    assert rel_err(good, corr6_oracle(p, spec)) <= 1e-10
    assert rel_err(bad, corr6_oracle(p, spec)) > 1e-3


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32), kappa=st.complex_numbers(max_magnitude=0.5))
def test_correlators_invariant_under_common_shift(seed, kappa):
    p = sample_generic_params(3, seed)
    spec = CorrSpec(2, "+-")
    a, b = corr6_closed(p, spec), corr6_closed(p.shifted(kappa), spec)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))
