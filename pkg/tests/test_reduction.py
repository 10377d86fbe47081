import itertools

import pytest

from vertex_dwbc.lattice import CorrSpec19, corr19_oracle, z19_oracle
from vertex_dwbc.reduction import corr19_reduced, z19_crosschecks, z19_reduced
from vertex_dwbc.weights import ModelParams19, sample_generic_params19

from .conftest import rel_err


@pytest.mark.parametrize("n", [1, 2, 3])
def test_partition_crosschecks(n):
    p = sample_generic_params19(n, 100 + n)
    report = z19_crosschecks(p)
    assert report.passed(1e-9), [(c.name, c.rel_err) for c in report.checks]
    assert rel_err(z19_reduced(p), z19_oracle(p)) <= 1e-9


def test_complex_eta_partition():
    p = sample_generic_params19(2, 8, eta=0.6 + 0.3j)
    assert rel_err(z19_reduced(p), z19_oracle(p)) <= 1e-9


def test_frozen_spin1_partition():
    p = sample_generic_params19(2, 3)
    assert rel_err(z19_oracle(p), -0.944105489203186 - 7.476141270697748j) <= 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_correlators_and_completeness(n):
    p = sample_generic_params19(n, 7)
    for r in range(n + 1):
        total = 0
        for deltas in itertools.product((1, 0, -1), repeat=2):
            spec = CorrSpec19(r, deltas)
            ref = corr19_oracle(p, spec)
            total += ref
            assert abs(corr19_reduced(p, spec) - ref) <= 1e-10 + 1e-8 * abs(ref)
        assert abs(total - 1) <= 1e-9


def test_corr19_spec_validation():
    with pytest.raises(ValueError):
        CorrSpec19(0, (2,))
    with pytest.raises(ValueError):
        CorrSpec19(0, ()).validate(2)
    with pytest.raises(ValueError):
        CorrSpec19(3, (1,)).validate(2)


def test_all_down_at_top_is_one():
    p = ModelParams19(0.8, [0.1, -0.2j], [0.05, 0.3])
    assert abs(corr19_oracle(p, CorrSpec19(2, (-1, -1))) - 1) <= 1e-12
