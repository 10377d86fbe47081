"""Cross-check harness: every closed formula against an independent evaluation.

A check produces :class:`Record` rows; a :class:`VerifyReport` collects them,
sorts them by check name and renders them deterministically.  Tolerances live
in :data:`TOLERANCES` and are copied into every report.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .determinant import corr6_closed, corr6_recursive, z6_det, z6_recursion_sides
from .efp import EfpHomSpec, efp_homogeneous, efp_inhom_det, homogeneous_params
from .fusion import (
    EXPECTED_SUPPORT,
    doubled_params,
    fusion_coeff_residual,
    fusion_coeffs,
    fusion_residuals,
    projector_p,
    r1,
)
from .lattice import CorrSpec, CorrSpec19, corr19_oracle, corr6_oracle, yang_baxter_residual, z19_oracle, z6_config_sum, z6_oracle
from .reduction import corr19_reduced, z19_crosschecks, z19_reduced
from .weights import ModelParams19, is_generic, sample_generic_params, sample_generic_params19, sh


@dataclass(frozen=True)
class Tolerance:
    """``rtol`` applies when ``|rhs| > floor``; otherwise ``atol``.

    ``rtol_large`` replaces ``rtol`` for ``N >= n_large``.
    """

    rtol: float | None = None
    atol: float | None = None
    floor: float = 0.0
    rtol_large: float | None = None
    n_large: int | None = None

    def rtol_for(self, n) -> float | None:
        if self.rtol_large is not None and n is not None and n >= self.n_large:
            return self.rtol_large
        return self.rtol

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


TOLERANCES = {
    "corr19.reduced-vs-oracle": Tolerance(rtol=1e-8, atol=1e-10, floor=1e-10),
    "corr19.sum-rule": Tolerance(atol=1e-9),
    "corr6.closed-vs-oracle": Tolerance(rtol=1e-8, atol=1e-10, floor=1e-10),
    "corr6.recursive-vs-oracle": Tolerance(rtol=1e-8, atol=1e-10, floor=1e-10),
    "corr6.sum-rule": Tolerance(atol=1e-9),
    "efp.homogeneous-double-vs-oracle": Tolerance(rtol=1e-6, atol=1e-10, floor=1e-10),
    "efp.homogeneous-extended-vs-oracle": Tolerance(rtol=1e-9, atol=1e-12, floor=1e-12),
    "efp.homogeneous-limit": Tolerance(rtol=1e-5, atol=1e-8, floor=1e-8),
    "efp.homogeneous-vs-spin1-oracle": Tolerance(rtol=1e-6, atol=1e-10, floor=1e-10),
    "efp.inhomogeneous-vs-closed": Tolerance(rtol=1e-7, atol=1e-10, floor=1e-10),
    "fusion.aux-absorption": Tolerance(atol=1e-12),
    "fusion.boundary-actions": Tolerance(atol=1e-14),
    "fusion.coefficient-identity": Tolerance(atol=1e-12),
    "fusion.coefficient-support": Tolerance(atol=0.0),
    "fusion.projector-idempotent": Tolerance(atol=1e-14),
    "fusion.quantum-absorption": Tolerance(atol=1e-12),
    "fusion.ybe-spin1": Tolerance(atol=1e-10),
    "z19.doubled-gauge": Tolerance(rtol=1e-9),
    "z19.fused-vs-doubled": Tolerance(rtol=1e-9),
    "z19.reduced-vs-oracle": Tolerance(rtol=1e-9),
    "z19.spin1-gauge": Tolerance(rtol=1e-9),
    "z6.anchor": Tolerance(atol=1e-14),
    "z6.config-sum-vs-oracle": Tolerance(rtol=1e-9),
    "z6.det-vs-oracle": Tolerance(rtol=1e-9, rtol_large=1e-8, n_large=5),
    "z6.recursion": Tolerance(rtol=1e-9),
}

TAGS = {
    "corr19": "spin1-reduction",
    "corr6.closed": "closed-sum",
    "corr6.recursive": "column-recursion",
    "corr6.sum": "completeness",
    "corr19.sum": "completeness",
    "efp.homogeneous": "homogeneous-efp",
    "efp.inhomogeneous": "operator-determinant",
    "fusion": "fusion",
    "z19": "spin1-partition",
    "z6.anchor": "single-site",
    "z6.config": "configuration-sum",
    "z6.det": "determinant",
    "z6.recursion": "partition-recursion",
}

EFP_POINTS = ((0.3 + 0.1j, 0.8), (0.2, 0.8), (-0.25 + 0.2j, 0.6 + 0.3j))
EFP_INHOM_Z = 0.3 + 0.1j
DEFAULT_ETA = 0.8


def _tag(name: str) -> str:
    for prefix in sorted(TAGS, key=len, reverse=True):
        if name.startswith(prefix):
            return TAGS[prefix]
    return "misc"


@dataclass
class Record:
    name: str
    n: int | None
    seed: int | None
    case: str
    lhs: complex
    rhs: complex
    abs_err: float = 0.0
    rel_err: float | None = None
    passed: bool = False

    def __post_init__(self):
        tol = TOLERANCES[self.name]
        self.lhs, self.rhs = complex(self.lhs), complex(self.rhs)
        self.abs_err = abs(self.lhs - self.rhs)
        self.rel_err = self.abs_err / abs(self.rhs) if abs(self.rhs) > 0 else None
        rtol = tol.rtol_for(self.n)
        if rtol is not None and abs(self.rhs) > tol.floor:
            self.passed = bool(self.rel_err <= rtol)
        else:
            self.passed = bool(tol.atol is not None and self.abs_err <= tol.atol)

    @property
    def tag(self) -> str:
        return _tag(self.name)

    def sort_key(self):
        return (self.name, -1 if self.n is None else self.n, -1 if self.seed is None else self.seed, self.case)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "tag": self.tag,
            "N": self.n,
            "seed": self.seed,
            "case": self.case,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    config: dict = field(default_factory=dict)
    records: list = field(default_factory=list)

    def extend(self, records) -> "VerifyReport":
        self.records.extend(records)
        return self

    def sorted_records(self) -> list:
        return sorted(self.records, key=Record.sort_key)

    def failures(self) -> list:
        return [r for r in self.sorted_records() if not r.passed]

    @property
    def ok(self) -> bool:
        return bool(self.records) and not self.failures()

    def names(self) -> list:
        return sorted({r.name for r in self.records})

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "tolerances": {k: TOLERANCES[k].as_dict() for k in self.names()},
            "summary": {"checks": len(self.records), "failed": len(self.failures()), "pass": self.ok},
            "records": [r.as_dict() for r in self.sorted_records()],
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "tag", "N", "seed", "case", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass"])
        for r in self.sorted_records():
            w.writerow([
                r.name, r.tag, r.n, r.seed, r.case,
                repr(r.lhs.real), repr(r.lhs.imag), repr(r.rhs.real), repr(r.rhs.imag),
                repr(r.abs_err), "" if r.rel_err is None else repr(r.rel_err), int(r.passed),
            ])
        return buf.getvalue()


# -- check groups ---------------------------------------------------------------


def check_partition(ns, seeds, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for n in ns:
        for seed in seeds:
            p = sample_generic_params(n, seed, eta)
            oracle = z6_oracle(p)
            out.append(Record("z6.det-vs-oracle", n, seed, "", z6_det(p), oracle))
            if n <= 4:
                out.append(Record("z6.config-sum-vs-oracle", n, seed, "", z6_config_sum(p), oracle))
            if n == 1:
                exact = sh(p.eta)
                for method, value in (("det", z6_det(p)), ("oracle", oracle), ("config-sum", z6_config_sum(p))):
                    out.append(Record("z6.anchor", n, seed, method, value, exact))
    return out


def check_recursion(ns, seeds, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for n in ns:
        if n < 2:
            continue
        for seed in seeds:
            p = sample_generic_params(n, seed, eta)
            for alpha in range(1, n + 1):
                lhs, rhs = z6_recursion_sides(p, alpha)
                out.append(Record("z6.recursion", n, seed, f"alpha={alpha}", lhs, rhs))
    return out


def check_correlators(ns, seeds, s_max=3, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for n in ns:
        for seed in seeds:
            p = sample_generic_params(n, seed, eta)
            for r in range(n + 1):
                for s in range(1, min(n, s_max) + 1):
                    total = 0j
                    for eps in itertools.product("+-", repeat=s):
                        spec = CorrSpec(r, eps)
                        case = f"r={r} eps={''.join(eps)}"
                        oracle = corr6_oracle(p, spec)
                        total += oracle
                        out.append(Record("corr6.closed-vs-oracle", n, seed, case, corr6_closed(p, spec), oracle))
                        out.append(Record("corr6.recursive-vs-oracle", n, seed, case, corr6_recursive(p, spec), oracle))
                    out.append(Record("corr6.sum-rule", n, seed, f"r={r} s={s}", total, 1.0))
    return out


def check_fusion(seeds, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for seed in seeds:
        rng = np.random.Generator(np.random.PCG64(seed))
        z, w = (complex(*rng.uniform(-0.5, 0.5, 2)) for _ in range(2))
        p = projector_p(eta)
        out.append(Record("fusion.projector-idempotent", None, seed, "", np.max(np.abs(p @ p - p)), 0))
        boundary = 0.0
        for idx in (0, 3):
            e = np.zeros(4)
            e[idx] = 1
            boundary = max(boundary, np.max(np.abs(p @ e - e)), np.max(np.abs(e @ p - e)))
        out.append(Record("fusion.boundary-actions", None, seed, "", boundary, 0))
        quantum, aux = fusion_residuals(z, w, eta)
        out.append(Record("fusion.quantum-absorption", None, seed, "", quantum, 0))
        out.append(Record("fusion.aux-absorption", None, seed, "", aux, 0))
        coeffs = fusion_coeffs(eta)
        out.append(Record("fusion.coefficient-identity", None, seed, "", fusion_coeff_residual(coeffs, eta), 0))
        out.append(Record("fusion.coefficient-support", None, seed, "", len(coeffs.support() ^ EXPECTED_SUPPORT), 0))
        x, y, u = sample_generic_params(3, seed, eta).lambdas
        ybe = yang_baxter_residual(lambda a, b, et: r1(a, b, et), x, y, u, eta, 3)
        out.append(Record("fusion.ybe-spin1", None, seed, "", ybe, 0))
    return out


def check_spin1_partition(ns, seeds, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for n in ns:
        for seed in seeds:
            p = sample_generic_params19(n, seed, eta)
            for c in z19_crosschecks(p).checks:
                out.append(Record(f"z19.{c.name}", n, seed, "", c.lhs, c.rhs))
            out.append(Record("z19.reduced-vs-oracle", n, seed, "", z19_reduced(p), z19_oracle(p)))
    return out


def check_spin1_correlators(ns, seeds, s_max=2, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for n in ns:
        for seed in seeds:
            p = sample_generic_params19(n, seed, eta)
            for r in range(n + 1):
                for s in range(1, min(n, s_max) + 1):
                    total = 0j
                    for deltas in itertools.product((1, 0, -1), repeat=s):
                        spec = CorrSpec19(r, deltas)
                        oracle = corr19_oracle(p, spec)
                        total += oracle
                        case = f"r={r} deltas={','.join(str(d) for d in deltas)}"
                        out.append(Record("corr19.reduced-vs-oracle", n, seed, case, corr19_reduced(p, spec), oracle))
                    out.append(Record("corr19.sum-rule", n, seed, f"r={r} s={s}", total, 1.0))
    return out


def check_efp_homogeneous(ns, points=EFP_POINTS) -> list[Record]:
    out = []
    for n in ns:
        for i, (z, eta) in enumerate(points):
            p6 = homogeneous_params(n, z, eta)
            for s in (1, 2):
                if s > n:
                    continue
                for r in range(n + 1):
                    case = f"point={i} r={r} s={s}"
                    oracle = corr6_oracle(p6, CorrSpec(2 * r, "-" * (2 * s)))
                    spec = EfpHomSpec(n, r, s, z, eta)
                    out.append(Record("efp.homogeneous-double-vs-oracle", n, None, case, efp_homogeneous(spec, "double"), oracle))
                    out.append(Record("efp.homogeneous-extended-vs-oracle", n, None, case, efp_homogeneous(spec, "extended"), oracle))
                    if n == 2:
                        p19 = ModelParams19(eta, [z] * n, [0.0] * n)
                        spin1 = corr19_oracle(p19, CorrSpec19(r, [-1] * s))
                        out.append(Record("efp.homogeneous-vs-spin1-oracle", n, None, case, efp_homogeneous(spec), spin1))
    return out


def _small_offsets(n: int, seed: int, eta, scale: float):
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(1000):
        xis = [complex(*v) for v in rng.uniform(-scale, scale, (n, 2))]
        ws = [complex(*v) for v in rng.uniform(-scale, scale, (n, 2))]
        p = ModelParams19(eta, [EFP_INHOM_Z + x for x in xis], ws)
        if is_generic(doubled_params(p, check=False), relaxed=True):
            return xis, ws
    raise RuntimeError("no generic offsets found")


def check_efp_inhomogeneous(seeds, n=2, precision="double", eta=DEFAULT_ETA, scale=0.2) -> list[Record]:
    out = []
    for seed in seeds:
        xis, ws = _small_offsets(n, seed, eta, scale)
        d = doubled_params(ModelParams19(eta, [EFP_INHOM_Z + x for x in xis], ws))
        for s in range(1, n + 1):
            for r in range(n + 1):
                closed = corr6_closed(d, CorrSpec(2 * r, "-" * (2 * s)))
                value = efp_inhom_det(d, r, s, EFP_INHOM_Z, xis, precision=precision)
                out.append(Record("efp.inhomogeneous-vs-closed", n, seed, f"r={r} s={s}", value, closed))
    return out


def richardson_limit(n: int, r: int, s: int, seed: int, eta=DEFAULT_ETA, h0: float = 1e-2) -> complex:
    """``xi, w -> 0`` limit of the operator determinant along ``h * (xi0, w0)``.

    Three halvings of ``h`` and second-order Richardson extrapolation.
    """
    xi0, w0 = _small_offsets(n, seed, eta, 0.5)
    vals = []
    for h in (h0, h0 / 2, h0 / 4):
        xis = [h * x for x in xi0]
        d = doubled_params(ModelParams19(eta, [EFP_INHOM_Z + x for x in xis], [h * w for w in w0]), check=False)
        vals.append(efp_inhom_det(d, r, s, EFP_INHOM_Z, xis, precision="extended", delta=1e-12))
    return (8 * vals[2] - 6 * vals[1] + vals[0]) / 3


def check_efp_limit(seeds, n=2, eta=DEFAULT_ETA) -> list[Record]:
    out = []
    for seed in seeds:
        for s in range(1, n + 1):
            for r in range(n + 1):
                exact = efp_homogeneous(EfpHomSpec(n, r, s, EFP_INHOM_Z, eta))
                out.append(Record("efp.homogeneous-limit", n, seed, f"r={r} s={s}", richardson_limit(n, r, s, seed, eta), exact))
    return out


def run_verify(n_max: int = 4, n_seeds: int = 5, seed: int = 0, precision: str = "double") -> VerifyReport:
    """The full cross-check matrix for ``N <= n_max`` and seeds ``seed .. seed + n_seeds - 1``."""
    seeds = list(range(seed, seed + n_seeds))
    ns = range(1, n_max + 1)
    report = VerifyReport({"n_max": n_max, "seeds": seeds, "precision": precision})
    report.extend(check_partition(ns, seeds))
    report.extend(check_recursion(ns, seeds))
    report.extend(check_correlators(range(1, min(n_max, 4) + 1), seeds))
    report.extend(check_fusion(seeds))
    report.extend(check_spin1_partition(range(1, min(n_max, 3) + 1), seeds))
    report.extend(check_spin1_correlators(range(2, min(n_max, 3) + 1), seeds[:3]))
    report.extend(check_efp_homogeneous(range(2, min(n_max, 3) + 1)))
    if n_max >= 2:
        report.extend(check_efp_inhomogeneous(seeds, precision=precision))
        report.extend(check_efp_limit(seeds[:1]))
    return report
