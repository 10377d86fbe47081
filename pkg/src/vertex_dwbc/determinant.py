"""Determinant formulas for the domain-wall partition function and boundary correlators.

Row indices are 1-based in the mathematical helpers (``alpha`` in
``1..N``) and 0-based when indexing Python sequences; the conversion happens
at the boundary of each function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DivisionByZero, SingularWeight
from .lattice import CorrSpec
from .linalg import det_complex, minor
from .weights import DELTA_GEN, ModelParams6, fg, phi, sh, wa, wb, wd, we

DET_FLOOR = 1e-300


@dataclass(frozen=True)
class IndexSets:
    """Rows above (``s_minus``) and below (``s_plus``) the projector line."""

    s_minus: tuple
    s_plus: tuple

    @classmethod
    def of(cls, n: int, r: int) -> "IndexSets":
        return cls(tuple(range(1, r + 1)), tuple(range(r + 1, n + 1)))

    def for_sign(self, eps: str) -> tuple:
        return self.s_minus if eps == "-" else self.s_plus


def chi(beta: int, alpha: int) -> int:
    return 1 if beta > alpha else 0


@dataclass(frozen=True)
class SignData:
    chi_sum: int
    exponent: int

    @property
    def sign(self) -> int:
        return -1 if self.exponent % 2 else 1

    @classmethod
    def of(cls, alphas, eps, n: int, r: int) -> "SignData":
        """Sign of one term of the closed correlator sum (``alphas`` 1-based)."""
        s = len(alphas)
        chis = sum(chi(alphas[k], alphas[j]) for j in range(s) for k in range(j + 1, s))
        exponent = chis
        for k in range(s):
            ek = 1 if eps[k] == "+" else -1
            exponent += alphas[k] - 1 - r * (ek + 1) // 2 + (ek + 1) * (n - (k + 1)) // 2
        return cls(chis, exponent)


def _check_nonzero(x, what: str, delta: float):
    if abs(x) < delta:
        raise SingularWeight(f"{what} vanishes")
    return x


def m_matrix(params: ModelParams6, delta: float = DELTA_GEN) -> list[list]:
    eta = params.eta
    return [[phi(lam, nu, eta, delta) for nu in params.nus] for lam in params.lambdas]


def _det_m(mat) -> complex:
    det = det_complex(mat)
    if abs(det) < DET_FLOOR:
        raise DivisionByZero("det M vanishes")
    return det


def _check_distinct(params: ModelParams6, delta: float) -> None:
    lam, nu = params.lambdas, params.nus
    n = params.n
    for i in range(n):
        for j in range(i + 1, n):
            _check_nonzero(wd(lam[i], lam[j]), f"d(lam{i + 1}, lam{j + 1})", delta)
            _check_nonzero(wd(nu[i], nu[j]), f"d(nu{i + 1}, nu{j + 1})", delta)


def z6_det(params: ModelParams6, delta: float = DELTA_GEN) -> complex:
    """Partition function from the determinant of ``M[alpha][k] = phi(lam_alpha, nu_k)``."""
    _check_distinct(params, delta)
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    n = params.n
    num = 1
    for x in lam:
        for y in nu:
            num *= wa(x, y, eta) * wb(x, y, eta)
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            den *= wd(lam[j], lam[i]) * wd(nu[i], nu[j])
    return num * det_complex(m_matrix(params, delta)) / den


def _drop(seq, idx: int) -> list:
    return [x for i, x in enumerate(seq) if i != idx]


def reduced_params(params: ModelParams6, alpha: int) -> ModelParams6:
    """Remove row ``alpha`` (1-based) and column 1."""
    return ModelParams6(params.eta, _drop(params.lambdas, alpha - 1), params.nus[1:])


def z6_recursion_sides(params: ModelParams6, alpha: int, delta: float = DELTA_GEN) -> tuple[complex, complex]:
    """Both sides of the partition-function recursion in the removed row ``alpha``.

    Left: ``Z_{N-1}(lam \\ lam_alpha, nu \\ nu_1) / Z_N``.  Right: the closed
    product of weights times the ratio of ``det M`` minors.
    """
    n = params.n
    if n < 2:
        raise ValueError("the recursion needs N >= 2")
    if not 1 <= alpha <= n:
        raise ValueError(f"alpha={alpha} outside [1, {n}]")
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    la = lam[alpha - 1]
    lhs = z6_det(reduced_params(params, alpha), delta) / z6_det(params, delta)
    rhs = (-1) ** (alpha - 1) / (wa(la, nu[0], eta) * wb(la, nu[0], eta))
    for beta in range(n):
        if beta != alpha - 1:
            rhs *= wd(lam[beta], la) / (wa(lam[beta], nu[0], eta) * wb(lam[beta], nu[0], eta))
    for k in range(1, n):
        rhs *= wd(nu[0], nu[k]) / (wa(la, nu[k], eta) * wb(la, nu[k], eta))
    mat = m_matrix(params, delta)
    rhs *= det_complex(minor(mat, [alpha - 1], [0])) / _det_m(mat)
    return lhs, rhs


def z6_recursion_residual(params: ModelParams6, alpha: int, delta: float = DELTA_GEN) -> float:
    lhs, rhs = z6_recursion_sides(params, alpha, delta)
    return abs(lhs - rhs)


# -- helper factors of the closed correlator formula ---------------------------


def h_factor(eps: str, x, params: ModelParams6, r: int, skip=()):
    """``H_r^eps(x)``; rows listed in ``skip`` (0-based) are left out of the numerator."""
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    n = params.n
    num = 1
    if eps == "-":
        for beta in range(n):
            if beta in skip:
                continue
            num *= we(lam[beta], x, eta) if beta < r else wd(lam[beta], x)
        den = 1
        for y in nu:
            den *= wb(x, y, eta)
    else:
        for beta in range(n):
            if beta in skip:
                continue
            num *= wd(lam[beta], x) if beta < r else we(x, lam[beta], eta)
        den = 1
        for y in nu:
            den *= wa(x, y, eta)
    return num / den


def e_numerator(eps_j: str, eps_k: str, xj, xk, nu_j, nu_k, eta):
    first = wa(xj, nu_k, eta) if eps_j == "-" else wb(xj, nu_k, eta)
    second = wa(xk, nu_j, eta) if eps_k == "+" else wb(xk, nu_j, eta)
    return first * second


def e_denominator(eps_j: str, eps_k: str, xj, xk, eta, printed: bool = False):
    """Denominator of ``E^{eps_j eps_k}``.

    With ``printed=True`` the ``(-, +)`` case uses ``d(x_j, x_k)``; the
    default ``d(x_k, x_j)`` is the orientation that reproduces the lattice.
    """
    if eps_j == "-" and eps_k == "+":
        return wd(xj, xk) if printed else wd(xk, xj)
    if eps_j == "-" and eps_k == "-":
        return we(xj, xk, eta)
    if eps_j == "+" and eps_k == "+":
        return we(xk, xj, eta)
    return wd(xj, xk)


def e_factor(eps_j: str, eps_k: str, xj, xk, nu_j, nu_k, eta, printed: bool = False):
    return e_numerator(eps_j, eps_k, xj, xk, nu_j, nu_k, eta) / e_denominator(eps_j, eps_k, xj, xk, eta, printed)


def m_helper(eps: str, x1, xj, nu1, eta):
    """Induction helper: ``m^+ = a(x_j, nu_1)/d(x_j, x_1)``, ``m^- = b(x_j, nu_1)/e(x_1, x_j)``."""
    if eps == "+":
        return wa(xj, nu1, eta) / wd(xj, x1)
    return wb(xj, nu1, eta) / we(x1, xj, eta)


def h_minus_from_f(params: ModelParams6, r: int, alpha1: int):
    """Left side of the first induction identity (``alpha1`` 0-based)."""
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    x = lam[alpha1]
    val = sh(eta)
    for beta in range(r):
        if beta != alpha1:
            val *= fg(x, lam[beta], eta)[0]
    for beta in range(params.n):
        if beta != alpha1:
            val *= wd(lam[beta], x)
    for y in nu:
        val /= wb(x, y, eta)
    return val


def prefactor(params: ModelParams6, r: int, s: int):
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    n = params.n
    pref = 1
    for j in range(s):
        num = 1
        for k in range(j + 1, n):
            num *= wd(nu[j], nu[k])
        den = 1
        for beta in range(n):
            den *= wa(lam[beta], nu[j], eta) if beta < r else wb(lam[beta], nu[j], eta)
        pref *= num / den
    return pref


def injective_tuples(eps, n: int, r: int):
    """All 0-based row tuples with ``alpha_k`` in the index set of ``eps_k``, pairwise distinct."""
    sets = IndexSets.of(n, r)
    pools = [[a - 1 for a in sets.for_sign(e)] for e in eps]
    for alphas in itertools.product(*pools):
        if len(set(alphas)) == len(alphas):
            yield alphas


def corr6_closed(
    params: ModelParams6,
    spec: CorrSpec,
    delta: float = DELTA_GEN,
    cancelled: bool = True,
    printed_sign: bool = False,
) -> complex:
    """Boundary correlator from the closed sum over injective row tuples.

    ``cancelled=True`` divides out, analytically, the denominator of each
    pair factor ``E^{eps_j eps_k}`` against the identical numerator factor of
    ``H^{eps_k}(lam_{alpha_k})``; the result only needs ``d`` and ``a, b`` to
    be nonzero and therefore also works when two rows differ by exactly
    ``eta`` (doubled lattices).  ``cancelled=False`` evaluates every factor as
    written and requires all ``e(lam_alpha, lam_beta)`` to be nonzero.
    """
    n = params.n
    spec.validate(n)
    r, eps = spec.r, spec.eps
    s = len(eps)
    if s == 0:
        return 1.0 + 0j
    _check_distinct(params, delta)
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    mat = m_matrix(params, delta)
    det_full = _det_m(mat)
    total = 0
    for alphas in injective_tuples(eps, n, r):
        sign = SignData.of([a + 1 for a in alphas], eps, n, r).sign
        term = sign
        for k in range(s):
            skip = alphas[:k] if cancelled else ()
            term *= h_factor(eps[k], lam[alphas[k]], params, r, skip)
        for j in range(s):
            for k in range(j + 1, s):
                xj, xk = lam[alphas[j]], lam[alphas[k]]
                if cancelled:
                    term *= e_numerator(eps[j], eps[k], xj, xk, nu[j], nu[k], eta)
                    if eps[j] == "-" and eps[k] == "+" and not printed_sign:
                        term = -term
                else:
                    den = e_denominator(eps[j], eps[k], xj, xk, eta, printed_sign)
                    _check_nonzero(den, "pair denominator", delta)
                    term *= e_numerator(eps[j], eps[k], xj, xk, nu[j], nu[k], eta) / den
        term *= det_complex(minor(mat, alphas, range(s)))
        total += term
    return complex(prefactor(params, r, s) * total / det_full)


def corr6_recursive(params: ModelParams6, spec: CorrSpec, delta: float = DELTA_GEN) -> complex:
    """Boundary correlator by peeling off column 1 recursively.

    Each removed row ``alpha`` carries the partition-function ratio
    ``Z_{N-1}(lam \\ lam_alpha, nu \\ nu_1) / Z_N(lam, nu)``.
    """
    n = params.n
    spec.validate(n)
    if spec.s == 0:
        return 1.0 + 0j
    _check_distinct(params, delta)
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    r = spec.r
    first, rest = spec.eps[0], spec.eps[1:]
    z_full = z6_det(params, delta)
    total = 0
    if first == "-":
        pref = 1
        for beta in range(r, n):
            pref *= wa(lam[beta], nu[0], eta)
        rows, r_next = range(r), r - 1
    else:
        pref = 1
        for beta in range(r):
            pref *= wb(lam[beta], nu[0], eta)
        rows, r_next = range(r, n), r
    for alpha in rows:
        x = lam[alpha]
        t = sh(eta)
        if first == "-":
            for beta in range(r):
                if beta != alpha:
                    t *= wb(lam[beta], nu[0], eta) * fg(x, lam[beta], eta, delta)[0]
            for k in range(1, n):
                t *= wa(x, nu[k], eta)
        else:
            for beta in range(r, n):
                if beta != alpha:
                    t *= wa(lam[beta], nu[0], eta) * fg(lam[beta], x, eta, delta)[0]
            for k in range(1, n):
                t *= wb(x, nu[k], eta)
        if n == 1:
            sub_corr, ratio = 1.0, 1 / z_full
        else:
            sub = reduced_params(params, alpha + 1)
            sub_corr = corr6_recursive(sub, CorrSpec(r_next, rest), delta)
            ratio = z6_det(sub, delta) / z_full
        total += t * sub_corr * ratio
    return complex(pref * total)
