import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertex_dwbc.errors import SingularWeight, SizeLimit
from vertex_dwbc.fusion import r6
from vertex_dwbc.lattice import (
    CorrSpec,
    corr6_oracle,
    l6,
    monodromy_b6,
    yang_baxter_residual,
    z6_config_sum,
    z6_oracle,
)
from vertex_dwbc.weights import ModelParams6, sample_generic_params, wb

from .conftest import rel_err

ETA = 0.8
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def test_l6_at_half_eta_is_scaled_swap():
    lo = l6(0.3 + ETA / 2, 0.3, ETA)
    assert np.allclose(lo, math.sinh(ETA) * SWAP, atol=1e-15)


def test_l6_layout_and_factorisation():
    lam, nu = 0.2 + 0.1j, -0.3 + 0.05j
    lo = l6(lam, nu, ETA)
    assert lo[0, 0] == pytest.approx(np.sinh(lam - nu + ETA / 2))
    assert lo[1, 2] == pytest.approx(np.sinh(ETA))
    assert np.allclose(lo, np.sinh(lam - nu + ETA / 2) * r6(lam - ETA / 2, nu, ETA))


def test_r6_at_coincidence_is_permutation():
    assert np.allclose(r6(0.4j, 0.4j, ETA), SWAP)
    assert np.allclose(r6(0.1, 0.1, ETA).sum(axis=1), 1)


def test_r6_pole():
    with pytest.raises(SingularWeight):
        r6(0.1 - ETA, 0.1, ETA)


def test_r6_yang_baxter(rng):
    for _ in range(10):
        x, y, z = rng.uniform(-0.5, 0.5, 3) + 1j * rng.uniform(-0.5, 0.5, 3)
        assert yang_baxter_residual(r6, x, y, z, ETA, 2) <= 1e-12


def test_b_single_site_lowers():
    p = ModelParams6(ETA, [0.1], [0.3])
    b = monodromy_b6(0.1, p)
    assert np.allclose(b, np.array([[0, 0], [np.sinh(ETA), 0]]))


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 4))
def test_b_operators_commute(seed, n):
    p = sample_generic_params(n, seed)
    b1, b2 = monodromy_b6(p.lambdas[0], p), monodromy_b6(p.lambdas[1], p)
    assert np.linalg.norm(b1 @ b2 - b2 @ b1, 2) <= 1e-12 * max(1.0, np.linalg.norm(b1 @ b2, 2))


def test_b_first_column_block():
    p = sample_generic_params(3, 1)
    lam = 0.13 + 0.2j
    rest = ModelParams6(p.eta, p.lambdas[1:], p.nus[1:])
    block = monodromy_b6(lam, p)[::2, ::2]  # column 1 in state + on both sides
    assert np.abs(block - wb(lam, p.nus[0], p.eta) * monodromy_b6(lam, rest)).max() <= 1e-13


def test_z1_is_sh_eta():
    p = ModelParams6(ETA, [0.21 - 0.1j], [0.03 + 0.2j])
    assert abs(z6_oracle(p) - math.sinh(ETA)) <= 1e-14
    assert abs(z6_config_sum(p) - math.sinh(ETA)) <= 1e-14


def test_z6_frozen_value():
    # direct contraction at seed 7, N = 3
    p = sample_generic_params(3, 7)
    assert rel_err(z6_oracle(p), -0.002167426392228963 + 0.06824950125937891j) <= 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_row_permutation_invariance(n):
    p = sample_generic_params(n, 40 + n)
    ref = z6_oracle(p)
    for perm in itertools.permutations(range(n)):
        q = ModelParams6(p.eta, [p.lambdas[i] for i in perm], p.nus)
        assert rel_err(z6_oracle(q), ref) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_config_sum_matches_contraction(n):
    p = sample_generic_params(n, n)
    assert rel_err(z6_config_sum(p), z6_oracle(p)) <= 1e-12


def test_size_limits():
    with pytest.raises(SizeLimit):
        z6_config_sum(sample_generic_params(5, 0))
    with pytest.raises(SizeLimit):
        z6_oracle(sample_generic_params(3, 0), n_max=2)


def test_trivial_correlators():
    p = sample_generic_params(3, 5)
    assert abs(corr6_oracle(p, CorrSpec(0, "+++")) - 1) <= 1e-12
    assert abs(corr6_oracle(p, CorrSpec(0, "+-"))) <= 1e-14
    assert abs(corr6_oracle(p, CorrSpec(3, "---")) - 1) <= 1e-12


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(1, 4), data=st.data())
def test_completeness(seed, n, data):
    p = sample_generic_params(n, seed)
    r = data.draw(st.integers(0, n))
    s = data.draw(st.integers(1, n))
    total = sum(corr6_oracle(p, CorrSpec(r, e)) for e in itertools.product("+-", repeat=s))
    assert abs(total - 1) <= 1e-9


def test_corr_spec_validation():
    with pytest.raises(ValueError):
        CorrSpec(0, "+x")
    with pytest.raises(ValueError):
        CorrSpec(4, "+").validate(3)
    with pytest.raises(ValueError):
        CorrSpec(1, "++++").validate(3)
