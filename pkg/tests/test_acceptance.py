"""Acceptance matrix: one test per criterion, each printing a PASS/FAIL line.

Every comparison goes through the records of :mod:`vertex_dwbc.verify`, so
the tolerances used here are the ones printed in ``verify`` reports.
"""

import subprocess
import sys

import pytest

from vertex_dwbc import verify as V

SEEDS_20 = range(20)
SEEDS_5 = range(5)
SEEDS_3 = range(3)


def _summary(records) -> str:
    worst = {}
    for r in records:
        err = r.rel_err if r.rel_err is not None and abs(r.rhs) > V.TOLERANCES[r.name].floor else r.abs_err
        worst[r.name] = max(worst.get(r.name, 0.0), err)
    return "; ".join(f"{k} worst {v:.1e}" for k, v in sorted(worst.items()))


def report(capsys, number: int, title: str, records) -> None:
    records = list(records)
    failed = [r for r in records if not r.passed]
    status = "PASS" if records and not failed else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {status}: {title} ({len(records)} checks, {len(failed)} failed; {_summary(records)})")
    assert records, "no checks were generated"
    assert not failed, [r.as_dict() for r in failed[:5]]


@pytest.fixture(scope="module")
def corr6_records():
    return V.check_correlators(range(1, 5), SEEDS_5)


@pytest.fixture(scope="module")
def corr19_records():
    return V.check_spin1_correlators(range(2, 4), SEEDS_3)


def test_criterion_01_partition_function(capsys):
    records = [r for r in V.check_partition(range(1, 6), SEEDS_20) if r.name != "z6.anchor"]
    assert {r.n for r in records} == {1, 2, 3, 4, 5}
    report(capsys, 1, "determinant = contraction = configuration sum", records)


def test_criterion_02_single_site_anchor(capsys):
    records = [r for r in V.check_partition([1], SEEDS_20) if r.name == "z6.anchor"]
    assert {r.case for r in records} == {"det", "oracle", "config-sum"}
    report(capsys, 2, "Z_1 = sh(eta) by three methods", records)


def test_criterion_03_boundary_correlators(capsys, corr6_records):
    records = [r for r in corr6_records if r.name != "corr6.sum-rule"]
    report(capsys, 3, "closed sum = column recursion = contraction", records)


def test_criterion_04_sum_rules(capsys, corr6_records, corr19_records):
    records = [r for r in corr6_records + corr19_records if r.name.endswith("sum-rule")]
    assert {r.name for r in records} == {"corr6.sum-rule", "corr19.sum-rule"}
    report(capsys, 4, "pattern sums equal one (spin 1/2 and spin 1)", records)


def test_criterion_05_partition_recursion(capsys):
    records = V.check_recursion(range(2, 6), SEEDS_5)
    report(capsys, 5, "partition-function recursion in every removed row", records)


def test_criterion_06_fusion_identities(capsys):
    records = V.check_fusion(range(10))
    report(capsys, 6, "projector, absorption, coefficient and spin-1 YBE identities", records)


def test_criterion_07_reductions(capsys, corr19_records):
    records = V.check_spin1_partition(range(1, 4), SEEDS_3)
    records += [r for r in corr19_records if r.name == "corr19.reduced-vs-oracle"]
    report(capsys, 7, "spin-1 partition function and correlators from the doubled lattice", records)


def test_criterion_08_homogeneous_efp(capsys):
    records = V.check_efp_homogeneous(range(2, 4))
    names = {r.name for r in records}
    assert names == {"efp.homogeneous-double-vs-oracle", "efp.homogeneous-extended-vs-oracle", "efp.homogeneous-vs-spin1-oracle"}
    report(capsys, 8, "homogeneous EFP vs doubled and spin-1 contractions", records)


def test_criterion_09_inhomogeneous_efp(capsys):
    records = V.check_efp_inhomogeneous(SEEDS_5, n=2)
    assert {r.case.split()[1] for r in records} == {"s=1", "s=2"}
    report(capsys, 9, "operator determinant vs closed sum on doubled parameters", records)


def _verify_bytes(seed: int) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "vertex_dwbc.cli", "verify", "--n-max", "4", "--seeds", "5", "--seed", str(seed)]
    return subprocess.run(cmd, capture_output=True)


def test_criterion_10_determinism(capsys):
    first, second = _verify_bytes(17), _verify_bytes(17)
    identical = first.stdout == second.stdout and len(first.stdout) > 0
    ok = identical and first.returncode == 0 and second.returncode == 0
    with capsys.disabled():
        print(
            f"\ncriterion 10 {'PASS' if ok else 'FAIL'}: verify --seed 17 byte-identical across runs "
            f"({len(first.stdout)} bytes, identical={identical}, exit codes {first.returncode}/{second.returncode})"
        )
    assert identical
    assert first.returncode == 0 and second.returncode == 0
