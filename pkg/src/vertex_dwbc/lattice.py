"""Brute-force lattice contraction: the ground truth for every closed formula.

A row of the lattice is the monodromy ``T = L_N ... L_1`` acting on an
auxiliary space and the ``N`` quantum (column) spaces.  States of the quantum
space are stored as tensors of shape ``(d,) * N`` whose axis ``k`` is column
``k + 1``.  Flattened vectors and explicit matrices use the convention that
column 1 is the least significant position of the index.

Spin-1/2 states: index 0 is ``+``, index 1 is ``-``.  Spin-1 states: index
0, 1, 2 are ``|1>, |0>, |-1>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, SingularWeight, SizeLimit
from .fusion import SPIN1_LABELS, r1, r6
from .weights import DELTA_GEN, ModelParams6, ModelParams19

N_MAX6 = 12
N_MAX19 = 6
N_MAX_CONFIG = 4
Z_FLOOR = 1e-30

PLUS, MINUS = 0, 1


@dataclass(frozen=True)
class CorrSpec:
    """Row split ``r`` and projector pattern on columns ``1..s``."""

    r: int
    eps: tuple

    def __post_init__(self):
        eps = tuple(self.eps)
        if any(x not in ("+", "-") for x in eps):
            raise ValueError(f"pattern entries must be '+' or '-', got {eps!r}")
        object.__setattr__(self, "eps", eps)

    @classmethod
    def parse(cls, r: int, pattern: str) -> "CorrSpec":
        return cls(r, tuple(pattern))

    @property
    def s(self) -> int:
        return len(self.eps)

    def validate(self, n: int) -> None:
        if not 0 <= self.r <= n:
            raise ValueError(f"row split r={self.r} outside [0, {n}]")
        if self.s > n:
            raise ValueError(f"pattern length {self.s} exceeds N={n}")


@dataclass(frozen=True)
class CorrSpec19:
    """Row split ``r`` and spin-1 projector pattern (values in ``{1, 0, -1}``)."""

    r: int
    deltas: tuple

    def __post_init__(self):
        deltas = tuple(int(x) for x in self.deltas)
        if any(x not in SPIN1_LABELS for x in deltas):
            raise ValueError(f"pattern entries must be 1, 0 or -1, got {deltas!r}")
        object.__setattr__(self, "deltas", deltas)

    @property
    def s(self) -> int:
        return len(self.deltas)

    def validate(self, n: int) -> None:
        if not 0 <= self.r <= n:
            raise ValueError(f"row split r={self.r} outside [0, {n}]")
        if not 1 <= self.s <= n:
            raise ValueError(f"pattern length {self.s} outside [1, {n}]")


def l6(lam, nu, eta) -> np.ndarray:
    """Six-vertex L-operator; first tensor factor auxiliary, second quantum."""
    a = np.sinh(lam - nu + eta / 2)
    b = np.sinh(lam - nu - eta / 2)
    c = np.sinh(eta)
    return np.array([[a, 0, 0, 0], [0, b, c, 0], [0, c, b, 0], [0, 0, 0, a]], dtype=complex)


def l19(z, w, eta, delta: float = DELTA_GEN) -> np.ndarray:
    """Spin-1 L-operator ``R1(z - eta/2, w)``."""
    return r1(z - eta / 2, w, eta, delta)


# -- contraction engine -------------------------------------------------------


def apply_row(vec: np.ndarray, ops: list[np.ndarray], aux_in: int, aux_out: int, d_aux: int) -> np.ndarray:
    """Apply ``<aux_out| L_N ... L_1 |aux_in>`` to a quantum tensor."""
    n = vec.ndim
    psi = np.zeros((d_aux,) + vec.shape, dtype=complex)
    psi[aux_in] = vec
    for k, op in enumerate(ops):
        d = vec.shape[k]
        t = op.reshape(d_aux, d, d_aux, d)
        psi = np.tensordot(t, psi, axes=([2, 3], [0, k + 1]))
        psi = np.moveaxis(psi, 1, k + 1)
    assert psi.ndim == n + 1
    return psi[aux_out]


def apply_local(vec: np.ndarray, ops: list[np.ndarray]) -> np.ndarray:
    """Apply single-site operators ``ops[k]`` on column ``k + 1``."""
    for k, op in enumerate(ops):
        vec = np.moveaxis(np.tensordot(op, vec, axes=([1], [k])), 0, k)
    return vec


def contract(rows, d: int, aux_in: int, aux_out: int, q_in: int, q_out: int, r=None, projectors=None) -> complex:
    """Contract a lattice whose row ``alpha`` is the operator list ``rows[alpha]``.

    ``projectors`` (single-site operators on columns ``1..s``) are inserted
    after the first ``r`` rows have been applied.
    """
    n = len(rows[0])
    vec = np.zeros((d,) * n, dtype=complex)
    vec[(q_in,) * n] = 1.0
    for alpha, ops in enumerate(rows):
        if projectors is not None and alpha == r:
            vec = apply_local(vec, projectors)
        vec = apply_row(vec, ops, aux_in, aux_out, d)
    if projectors is not None and r == len(rows):
        vec = apply_local(vec, projectors)
    return complex(vec[(q_out,) * n])


def _check_size(n: int, n_max: int) -> None:
    if n > n_max:
        raise SizeLimit(f"N={n} exceeds the budget N_max={n_max}")


def _rows6(params: ModelParams6) -> list[list[np.ndarray]]:
    eta = params.eta
    return [[l6(lam, nu, eta) for nu in params.nus] for lam in params.lambdas]


def _rows19(params: ModelParams19, delta: float) -> list[list[np.ndarray]]:
    eta = params.eta
    return [[l19(z, w, eta, delta) for w in params.ws] for z in params.zs]


def _proj_half(label: str) -> np.ndarray:
    return np.diag([1.0, 0.0] if label == "+" else [0.0, 1.0]).astype(complex)


def _proj_one(label: int) -> np.ndarray:
    v = np.zeros(3)
    v[SPIN1_LABELS.index(label)] = 1.0
    return np.diag(v).astype(complex)


# -- six-vertex ---------------------------------------------------------------


def apply_b6(lam, params: ModelParams6, vec: np.ndarray) -> np.ndarray:
    """``B(lam) vec`` for a quantum tensor ``vec`` of shape ``(2,) * N``."""
    ops = [l6(lam, nu, params.eta) for nu in params.nus]
    return apply_row(vec, ops, MINUS, PLUS, 2)


def _to_flat(vec: np.ndarray) -> np.ndarray:
    # column 1 least significant: reverse axes before C-order flattening
    return vec.transpose(tuple(reversed(range(vec.ndim)))).reshape(-1)


def _from_flat(flat: np.ndarray, n: int, d: int = 2) -> np.ndarray:
    return flat.reshape((d,) * n).transpose(tuple(reversed(range(n))))


def monodromy_b6(lam, params: ModelParams6, n_max: int = N_MAX6) -> np.ndarray:
    """Explicit ``2^N x 2^N`` matrix of ``B(lam)``."""
    n = params.n
    _check_size(n, n_max)
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[col] = 1.0
        out[:, col] = _to_flat(apply_b6(lam, params, _from_flat(e, n)))
    return out


def z6_oracle(params: ModelParams6, n_max: int = N_MAX6) -> complex:
    _check_size(params.n, n_max)
    return contract(_rows6(params), 2, MINUS, PLUS, PLUS, MINUS)


def corr6_oracle(params: ModelParams6, spec: CorrSpec, n_max: int = N_MAX6) -> complex:
    n = params.n
    _check_size(n, n_max)
    spec.validate(n)
    rows = _rows6(params)
    z = contract(rows, 2, MINUS, PLUS, PLUS, MINUS)
    if abs(z) < Z_FLOOR:
        raise DivisionByZero("partition function vanishes")
    projectors = [_proj_half(x) for x in spec.eps]
    return contract(rows, 2, MINUS, PLUS, PLUS, MINUS, spec.r, projectors) / z


def z6_config_sum(params: ModelParams6) -> complex:
    """Sum of vertex-weight products over all edge configurations.

    The free variables are the vertical edges between consecutive rows; along
    each row the horizontal edges follow from arrow conservation, and a vertex
    whose outgoing horizontal edge would be neither ``+`` nor ``-`` carries
    weight zero.
    """
    n = params.n
    _check_size(n, N_MAX_CONFIG)
    eta = params.eta
    w = [[l6(lam, nu, eta) for nu in params.nus] for lam in params.lambdas]
    bottom = (PLUS,) * n
    top = (MINUS,) * n
    total = 0j
    for inner in itertools.product(itertools.product((PLUS, MINUS), repeat=n), repeat=n - 1):
        lines = (bottom,) + inner + (top,)
        value = 1 + 0j
        for alpha in range(n):
            below, above = lines[alpha], lines[alpha + 1]
            h = MINUS
            for k in range(n):
                h_out = h + below[k] - above[k]
                if h_out not in (PLUS, MINUS):
                    value = 0
                    break
                value *= w[alpha][k][2 * h_out + above[k], 2 * h + below[k]]
                if value == 0:
                    break
                h = h_out
            if value == 0 or h != PLUS:
                value = 0
                break
        total += value
    return complex(total)


# -- spin-1 -------------------------------------------------------------------

I_ONE, I_ZERO, I_MINUS_ONE = 0, 1, 2


def z19_oracle(params: ModelParams19, n_max: int = N_MAX19, delta: float = DELTA_GEN) -> complex:
    _check_size(params.n, n_max)
    return contract(_rows19(params, delta), 3, I_MINUS_ONE, I_ONE, I_ONE, I_MINUS_ONE)


def corr19_oracle(params: ModelParams19, spec: CorrSpec19, n_max: int = N_MAX19, delta: float = DELTA_GEN) -> complex:
    n = params.n
    _check_size(n, n_max)
    spec.validate(n)
    rows = _rows19(params, delta)
    z = contract(rows, 3, I_MINUS_ONE, I_ONE, I_ONE, I_MINUS_ONE)
    if abs(z) < Z_FLOOR:
        raise DivisionByZero("partition function vanishes")
    projectors = [_proj_one(x) for x in spec.deltas]
    return contract(rows, 3, I_MINUS_ONE, I_ONE, I_ONE, I_MINUS_ONE, spec.r, projectors) / z


def yang_baxter_residual(rmat, x, y, z, eta, d: int) -> float:
    """``|R12(x,y) R13(x,z) R23(y,z) - R23(y,z) R13(x,z) R12(x,y)|`` (max norm)."""
    from .fusion import embed_two_site

    r12 = embed_two_site(rmat(x, y, eta), 0, 1, 3, d)
    r13 = embed_two_site(rmat(x, z, eta), 0, 2, 3, d)
    r23 = embed_two_site(rmat(y, z, eta), 1, 2, 3, d)
    return float(np.max(np.abs(r12 @ r13 @ r23 - r23 @ r13 @ r12)))


__all__ = [
    "CorrSpec",
    "CorrSpec19",
    "SingularWeight",
    "apply_b6",
    "contract",
    "corr19_oracle",
    "corr6_oracle",
    "l19",
    "l6",
    "monodromy_b6",
    "r6",
    "yang_baxter_residual",
    "z19_oracle",
    "z6_config_sum",
    "z6_oracle",
]
