"""Emptiness formation probability of the spin-1 lattice in determinant form.

Both evaluators expand a determinant whose first ``2s`` columns hold
operators (shifts or derivatives acting on auxiliary variables
``eps_1 .. eps_2s``) over injective assignments of those columns to rows.
Each term applies the selected operators to a target function ``G`` and
multiplies by the complementary scalar minor.

``G`` contains the factor ``1 / prod_{j<k} sh(eps_j - eps_k + eta)`` whose
poles meet zeros of the numerator at the evaluation points.  Every term is
evaluated iteratively: ``eps_1`` is fixed (or expanded) first with the later
variables still free, then ``eps_2``, and so on.  Coinciding pole/zero
factors then cancel identically and every term is finite.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np

from .determinant import _check_distinct, _det_m, m_matrix
from .errors import PrecisionLoss, ShapeError, SingularWeight
from .jets import Jet
from .linalg import condition_estimate, det_complex, permutation_sign
from .weights import DELTA_GEN, ModelParams6, sh, wa, wb, wd, we

EXTENDED_DPS = 40
COND_LIMIT = 1e12


# -- operator-valued determinants ----------------------------------------------


@dataclass(frozen=True)
class OperatorEntry:
    """Entry of an operator-valued matrix.

    ``scalar``: a number ``value``.  ``shift``: ``exp(amount d/d eps)``.
    ``deriv``: ``d^order/d eps^order`` evaluated at ``eps = base``, where the
    base is ``0`` or ``eta`` (``base_eta`` flag).
    """

    kind: str
    value: object = None
    amount: object = None
    order: int = 0
    base_eta: bool = False

    @classmethod
    def scalar(cls, value) -> "OperatorEntry":
        return cls("scalar", value=value)

    @classmethod
    def shift(cls, amount) -> "OperatorEntry":
        return cls("shift", amount=amount)

    @classmethod
    def deriv(cls, order: int, base_eta: bool = False) -> "OperatorEntry":
        return cls("deriv", order=order, base_eta=base_eta)

    @property
    def is_operator(self) -> bool:
        return self.kind != "scalar"


def _operator_columns(matrix) -> int:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ShapeError("operator matrix must be square")
    flags = [[entry.is_operator for entry in row] for row in matrix]
    n_ops = 0
    while n_ops < n and all(flags[i][n_ops] for i in range(n)):
        n_ops += 1
    for i in range(n):
        for j in range(n):
            if flags[i][j] != (j < n_ops):
                raise ShapeError("operator entries must fill exactly the leading columns")
    return n_ops


def operator_det_apply(matrix, target, shuffle_seed=None):
    """Expand ``det(matrix)`` over the operator columns and apply it to ``target``.

    ``target(entries, rows)`` receives, for every operator column ``c``, the
    entry chosen in that column and the row it came from, and returns the
    value of the product of those operators acting on ``G`` at ``eps = 0``.
    With ``shuffle_seed`` the assignments are visited in a pseudo-random
    order (the result does not depend on it up to rounding).
    """
    n = len(matrix)
    n_ops = _operator_columns(matrix)
    scalar_cols = list(range(n_ops, n))
    scalar = [[matrix[i][j].value for j in range(n)] for i in range(n)]
    if n_ops == 0:
        return det_complex(scalar) * target((), ())
    assignments = list(itertools.permutations(range(n), n_ops))
    if shuffle_seed is not None:
        order = np.random.Generator(np.random.PCG64(shuffle_seed)).permutation(len(assignments))
        assignments = [assignments[i] for i in order]
    minors = {}
    total = 0
    for rows in assignments:
        key = frozenset(rows)
        if key not in minors:
            rest = [i for i in range(n) if i not in key]
            minors[key] = det_complex([[scalar[i][j] for j in scalar_cols] for i in rest])
        m = minors[key]
        if m == 0:
            continue
        sign = permutation_sign(rows) * (-1 if (sum(rows) - sum(range(n_ops))) % 2 else 1)
        entries = tuple(matrix[rows[c]][c] for c in range(n_ops))
        total += sign * m * target(entries, rows)
    return total


def point_target(g):
    """Target that evaluates ``g`` at the shift amounts (shift entries only)."""

    def target(entries, rows):
        if any(e.kind != "shift" for e in entries):
            raise ShapeError("point_target handles shift entries only")
        return g(*[e.amount for e in entries])

    return target


# -- precision helpers ----------------------------------------------------------


def _lift(x, extended: bool):
    return mpmath.mpc(complex(x)) if extended else complex(x)


def _to_complex(x) -> complex:
    return complex(x)


# -- inhomogeneous determinant --------------------------------------------------


def _check_doubled(params: ModelParams6, z, xis, tol: float = 1e-12):
    n = len(xis)
    if params.n != 2 * n:
        raise ShapeError(f"doubled parameters must have 2N={2 * n} rows")
    eta = params.eta
    for j, xi in enumerate(xis):
        want = (z + xi, z + xi + eta)
        got = params.lambdas[2 * j : 2 * j + 2]
        if abs(got[0] - want[0]) > tol or abs(got[1] - want[1]) > tol:
            raise ShapeError(f"rows {2 * j + 1},{2 * j + 2} are not (z + xi_{j + 1}, z + xi_{j + 1} + eta)")
        w = params.nus[2 * j + 1]
        if abs(params.nus[2 * j] - (w + eta)) > tol:
            raise ShapeError(f"columns {2 * j + 1},{2 * j + 2} are not (w + eta, w)")


def x1_factor(zs, ws, eta, r: int, s: int):
    n = len(zs)
    num = 1
    den = 1
    for j in range(s):
        for k in range(j, n):
            num *= wd(ws[j] + eta, ws[k])
        for k in range(j + 1, n):
            num *= wd(ws[j], ws[k]) ** 2 * wd(ws[j], ws[k] + eta)
        for beta in range(n):
            zb, wj = zs[beta], ws[j]
            if beta < r:
                den *= wa(zb + eta, wj, eta) * wa(zb, wj, eta) ** 2 * wa(zb, wj + eta, eta)
            else:
                den *= wb(zb + eta, wj, eta) * wb(zb, wj, eta) ** 2 * wb(zb, wj + eta, eta)
    return num / den


def _x3_single(v: int, x, ws, eta, s: int):
    """Factors of the pair numerator product that depend on variable ``v`` (0-based)."""
    val = 1
    if v % 2 == 0:
        j = v // 2 + 1
        for k in range(j, s + 1):
            val *= wa(x, ws[k - 1], eta)
        for k in range(j + 1, s + 1):
            val *= wa(x, ws[k - 1] + eta, eta)
        for i in range(1, j):
            val *= wb(x, ws[i - 1], eta) * wb(x, ws[i - 1] + eta, eta)
    else:
        j = v // 2 + 1
        for k in range(j + 1, s + 1):
            val *= wa(x, ws[k - 1], eta) * wa(x, ws[k - 1] + eta, eta)
        for i in range(1, j):
            val *= wb(x, ws[i - 1], eta)
        for i in range(1, j + 1):
            val *= wb(x, ws[i - 1] + eta, eta)
    return val


def efp_inhom_det(
    params6_doubled: ModelParams6,
    r: int,
    s: int,
    z,
    xis,
    delta: float = DELTA_GEN,
    pair_bound: str = "le",
    precision: str = "double",
    shuffle_seed=None,
) -> complex:
    """Doubled-lattice EFP of length ``2s`` from the operator determinant.

    ``params6_doubled`` must have rows ``(z + xi_j, z + xi_j + eta)`` and
    columns ``(w_j + eta, w_j)``.  ``pair_bound='lt'`` drops the pairs
    ``(j, 2s)`` from the pole product (kept for comparison only).
    """
    n = len(xis)
    if not 1 <= s <= n or not 0 <= r <= n:
        raise ValueError("need 1 <= s <= N and 0 <= r <= N")
    _check_doubled(params6_doubled, z, xis)
    _check_distinct(params6_doubled, delta)
    extended = precision == "extended"
    with mpmath.workdps(EXTENDED_DPS):
        eta = _lift(params6_doubled.eta, extended)
        z = _lift(z, extended)
        xis = [_lift(x, extended) for x in xis]
        zs = [z + x for x in xis]
        ws = [_lift(params6_doubled.nus[2 * j + 1], extended) for j in range(n)]
        lams = [x for zj in zs for x in (zj, zj + eta)]
        nus = [x for w in ws for x in (w + eta, w)]
        dbl = ModelParams6(params6_doubled.eta, [complex(x) for x in lams], [complex(x) for x in nus])
        mat_full = m_matrix(dbl, delta) if not extended else [
            [sh(eta) / (wa(x, y, eta) * wb(x, y, eta)) for y in nus] for x in lams
        ]
        det_full = _det_m(mat_full)
        p = 2 * s
        matrix = []
        for row in range(2 * n):
            j = row // 2
            amount = xis[j] if row % 2 == 0 else xis[j] + eta
            entries = [OperatorEntry.shift(amount) for _ in range(p)]
            entries += [OperatorEntry.scalar(mat_full[row][col]) for col in range(p, 2 * n)]
            matrix.append(entries)
        two_r = 2 * r

        def target(entries, rows):
            xs = [lams[rho] for rho in rows]
            val = 1
            for k in range(p):
                x = xs[k]
                # a pole e(x_i, x) coincides with the numerator factor of the
                # row lam_rho + eta; fixing x_i first cancels the pair exactly
                partners = () if pair_bound == "lt" and k == p - 1 else range(k)
                cancelled = set()
                for i in partners:
                    rho = rows[i]
                    if rho < two_r:
                        cancelled.add(rho)
                    elif rho % 2 == 0:
                        cancelled.add(rho + 1)
                    else:
                        val /= we(xs[i], x, eta)
                for beta in range(2 * n):
                    if beta not in cancelled:
                        val *= we(lams[beta], x, eta) if beta < two_r else wd(lams[beta], x)
                for y in nus:
                    val /= wb(x, y, eta)
                val *= _x3_single(k, x, ws, eta, s)
            return val

        total = operator_det_apply(matrix, target, shuffle_seed)
        result = x1_factor(zs, ws, eta, r, s) * total / det_full
        return _to_complex(result)


# -- homogeneous limit -----------------------------------------------------------


@dataclass(frozen=True)
class EfpHomSpec:
    n: int
    r: int
    s: int
    z: complex
    eta: complex

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("N must be positive")
        if not 0 <= self.r <= self.n:
            raise ValueError(f"r={self.r} outside [0, {self.n}]")
        if not 1 <= self.s <= self.n:
            raise ValueError(f"s={self.s} outside [1, {self.n}]")


def homogeneous_params(n: int, z, eta) -> ModelParams6:
    """Doubled six-vertex parameters at ``xi = w = 0``."""
    return ModelParams6(eta, [x for _ in range(n) for x in (z, z + eta)], [x for _ in range(n) for x in (eta, 0.0)])


def phi_jet(u, eta, order: int) -> Jet:
    """Taylor jet of ``phi(u + t, 0) = sh(eta) / (sh(u + t + eta/2) sh(u + t - eta/2))``."""
    num = Jet.constant(sh(eta), order)
    return num / (Jet.sh_shift(u + eta / 2, order) * Jet.sh_shift(u - eta / 2, order))


class _HomogeneousTarget:
    """Iterated Laurent coefficients of ``Y2 Y3 / prod sh(eps_j - eps_k + eta)``."""

    def __init__(self, n, r, s, z, eta, pair_bound: str):
        self.n, self.r, self.s = n, r, s
        self.z, self.eta = z, eta
        self.p = 2 * s
        self.pair_bound = pair_bound
        self.cache = {}

    def _has_pair(self, j: int, k: int) -> bool:
        if self.pair_bound == "lt" and k == self.p - 1:
            return False
        return True

    def _single(self, v: int, base_eta: bool, order: int) -> Jet:
        """Univariate factor of variable ``v`` expanded around its base point."""
        key = ("single", v, base_eta, order)
        if key not in self.cache:
            self.cache[key] = self._build_single(v, base_eta, order)
        return self.cache[key]

    def _build_single(self, v: int, base_eta: bool, order: int) -> Jet:
        n, r, s, z, eta = self.n, self.r, self.s, self.z, self.eta
        b = eta if base_eta else 0 * eta

        def shj(c, sign=1, zero=False):
            return Jet.sh_shift(c, order, sign, exact_zero=zero)

        val = shj(2 * eta - b, -1) ** r * shj(eta - b, -1, zero=base_eta) ** n
        val = val * shj(-b, -1, zero=not base_eta) ** (n - r)
        val = val / (shj(b + z - eta / 2) ** n * shj(b + z - 3 * eta / 2) ** n)
        if v % 2 == 0:
            j = v // 2 + 1
            val = val * shj(z + b + eta / 2) ** (s - j + 1) * shj(z + b - eta / 2) ** (s - j)
            k = j
            if k >= 2:
                val = val * shj(z + b - eta / 2) ** (k - 1) * shj(z + b - 3 * eta / 2) ** (k - 1)
        else:
            j = v // 2 + 1
            if j <= s - 1:
                val = val * shj(z + b + eta / 2) ** (s - j) * shj(z + b - eta / 2) ** (s - j)
            k = j
            val = val * shj(z + b - eta / 2) ** (k - 1) * shj(z + b - 3 * eta / 2) ** k
        return val

    def _pair_terms(self, bj: bool, bk: bool, nmax: int, order: int) -> list:
        """Jets in ``t_k`` of the ``t_j^n`` coefficients of ``1/sh(c + t_j - t_k)``."""
        key = ("pair", bj, bk, nmax, order)
        if key in self.cache:
            return self.cache[key]
        eta = self.eta
        c = (int(bj) - int(bk) + 1) * eta
        zero = bj is False and bk is True
        base = Jet.sh_shift(c, order + nmax, -1, exact_zero=zero).reciprocal()
        out = []
        cur = base
        fact = 1
        for n in range(nmax + 1):
            if n:
                fact *= n
                cur = cur.derivative()
            out.append(cur * ((-1) ** n / fact))
        self.cache[key] = out
        return out

    def coefficient(self, bases: tuple, orders: tuple, order: int):
        """Product of ``orders[v]!`` and the iterated Taylor coefficient."""
        p = self.p
        terms = [(1, [self._single(v, bases[v], order) for v in range(p)])]
        for j in range(p):
            m = orders[j]
            later = [k for k in range(j + 1, p) if self._has_pair(j, k)]
            new_terms = []
            for coef, jets in terms:
                fj = jets[j]
                nmax = m - fj.val
                if nmax < 0:
                    continue
                pair_lists = {k: self._pair_terms(bases[j], bases[k], nmax, order) for k in later}
                for comp in _compositions(nmax, len(later)):
                    e0 = m - sum(comp)
                    if e0 < fj.val:
                        continue
                    c0 = fj.coeff(e0)
                    if c0 == 0:
                        continue
                    new_jets = list(jets)
                    for k, nk in zip(later, comp):
                        new_jets[k] = new_jets[k] * pair_lists[k][nk]
                    new_terms.append((coef * c0, new_jets))
            terms = new_terms
        total = 0
        for coef, _ in terms:
            total += coef
        for m in orders:
            total *= math.factorial(m)
        return total

    def __call__(self, entries, rows):
        bases = tuple(e.base_eta for e in entries)
        orders = tuple(e.order for e in entries)
        key = (bases, orders)
        if key not in self.cache:
            order = max(orders) + 2
            while True:
                try:
                    self.cache[key] = self.coefficient(bases, orders, order)
                    break
                except ValueError:
                    order += 4
                    if order > 200:
                        raise
        return self.cache[key]


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` non-negative integers with sum at most ``total``."""
    if parts == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _phi_derivatives(z, eta, max_order: int) -> dict:
    out = {}
    for shift in (-1, 0, 1):
        jet = phi_jet(z + shift * eta, eta, max_order)
        out[shift] = [jet.derivative_value(k) for k in range(max_order + 1)]
    return out


def efp_homogeneous(
    spec: EfpHomSpec,
    precision: str | None = None,
    pair_bound: str = "le",
    operator_order: str = "row",
    delta: float = DELTA_GEN,
    shuffle_seed=None,
) -> complex:
    """EFP of length ``s`` of the homogeneous spin-1 lattice (``w = xi = 0``).

    ``precision``: ``'double'``, ``'extended'`` (mpmath, 40 digits) or
    ``None`` for extended when ``N >= 3``.  ``operator_order='row'`` uses
    ``d^(j-1)`` in the operator columns of block row ``j``; ``'printed'``
    uses ``d^(j+k-2)`` (kept for comparison, disagrees with the lattice for
    ``s >= 2``).  ``pair_bound`` as in :func:`efp_inhom_det`.
    """
    spec.validate()
    n, r, s = spec.n, spec.r, spec.s
    if precision is None:
        precision = "extended" if n >= 3 else "double"
    extended = precision == "extended"
    eta0, z0 = complex(spec.eta), complex(spec.z)
    for c in (0.5, -0.5, 1.5, -1.5):
        if abs(np.sinh(z0 + c * eta0)) < delta:
            raise SingularWeight(f"sh(z {'+' if c > 0 else '-'} {abs(c)} eta) vanishes")
    with mpmath.workdps(EXTENDED_DPS):
        eta = _lift(eta0, extended)
        z = _lift(z0, extended)
        dphi = _phi_derivatives(z, eta, 2 * n)

        def block(order):
            return [[dphi[-1][order], dphi[0][order]], [dphi[0][order], dphi[1][order]]]

        m = [[None] * (2 * n) for _ in range(2 * n)]
        for j in range(n):
            for k in range(n):
                blk = block(j + k)
                for a in range(2):
                    for b in range(2):
                        m[2 * j + a][2 * k + b] = blk[a][b]
        if not extended and condition_estimate(m) > COND_LIMIT:
            warnings.warn("ill-conditioned m matrix; use extended precision", PrecisionLoss, stacklevel=2)
        det_m = det_complex(m)

        matrix = []
        for row in range(2 * n):
            j = row // 2 + 1
            entries = []
            for col in range(2 * s):
                k = col // 2 + 1
                order = j - 1 if operator_order == "row" else j + k - 2
                entries.append(OperatorEntry.deriv(order, base_eta=bool(row % 2)))
            for col in range(2 * s, 2 * n):
                k = col // 2 + 1
                entries.append(OperatorEntry.scalar(block(j + k - s - 2)[row % 2][col % 2]))
            matrix.append(entries)

        target = _HomogeneousTarget(n, r, s, z, eta, pair_bound)
        total = operator_det_apply(matrix, target, shuffle_seed)

        def a0(x):
            return wa(x, 0 * x, eta)

        def b0(x):
            return wb(x, 0 * x, eta)

        y1 = (-1) ** (s * n - s * (s + 1) // 2) * math.prod(math.factorial(n - j) for j in range(1, s + 1)) ** 2
        y1 = y1 * sh(eta) ** (2 * s * n - s * s)
        y1 = y1 / (
            a0(z + eta) ** (r * s)
            * b0(z + eta) ** ((n - r) * s)
            * a0(z) ** (2 * r * s)
            * b0(z) ** (2 * (n - r) * s)
            * a0(z - eta) ** (r * s)
            * b0(z - eta) ** ((n - r) * s)
        )
        return _to_complex(y1 * total / det_m)
