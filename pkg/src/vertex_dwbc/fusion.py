"""Fusion of gauge-transformed six-vertex R-matrices into the spin-1 R-matrix.

Pair-space conventions: a spin-1 space ``J`` is the symmetric part of two
spin-1/2 spaces ``(2J-1, 2J)``.  Operators on four spin-1/2 spaces are
``16 x 16`` matrices in the Kronecker order ``(a1, a2, q1, q2)`` with
``a1 = 2J-1``, ``a2 = 2J`` (auxiliary) and ``q1 = 2K-1``, ``q2 = 2K``
(quantum); the first factor is the most significant index.

The projector on the auxiliary pair acts with ``a2`` as its first factor,
the projector on the quantum pair with ``q1`` first.  Spin-1 states are
ordered ``(|1>, |0>, |-1>)``; a 9-dim index is ``3 * aux + quantum``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NoSolution, SingularWeight
from .weights import DELTA_GEN, ModelParams6, ModelParams19, check_generic

SPIN1_LABELS = (1, 0, -1)
SPIN_HALF_LABELS = ("+", "-")


def r6(lam, nu, eta, delta: float = DELTA_GEN) -> np.ndarray:
    """Normalised six-vertex R-matrix in the basis ``(++, +-, -+, --)``."""
    x = np.sinh(lam - nu + eta)
    if abs(x) < delta:
        raise SingularWeight(f"R-matrix pole at lam - nu = {lam - nu}")
    b = np.sinh(lam - nu) / x
    c = np.sinh(eta) / x
    return np.array([[1, 0, 0, 0], [0, b, c, 0], [0, c, b, 0], [0, 0, 0, 1]], dtype=complex)


def gauge_small(lam) -> np.ndarray:
    return np.diag([1.0, np.exp(lam)]).astype(complex)


def gauge_big(z) -> np.ndarray:
    return np.diag([1.0, np.exp(z), np.exp(2 * z)]).astype(complex)


@dataclass(frozen=True)
class GaugePair:
    small: np.ndarray
    big: np.ndarray

    @classmethod
    def at(cls, x) -> "GaugePair":
        return cls(gauge_small(x), gauge_big(x))


def r_plus(lam, nu, eta, delta: float = DELTA_GEN) -> np.ndarray:
    g = np.kron(gauge_small(lam), gauge_small(nu))
    ginv = np.kron(gauge_small(-lam), gauge_small(-nu))
    return g @ r6(lam, nu, eta, delta) @ ginv


def projector_p(eta, delta: float = DELTA_GEN) -> np.ndarray:
    """Rank-3 projector on the pair space ``(++, +-, -+, --)``."""
    c2 = 2 * np.cosh(eta)
    if abs(c2) < 2 * delta:
        raise SingularWeight("ch(eta) vanishes")
    return np.array(
        [
            [1, 0, 0, 0],
            [0, np.exp(eta) / c2, 1 / c2, 0],
            [0, 1 / c2, np.exp(-eta) / c2, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )


def embed_two_site(op: np.ndarray, i: int, j: int, n: int, d: int = 2) -> np.ndarray:
    """Lift a two-site operator acting on sites ``(i, j)`` (``i`` first) to ``n`` sites.

    Sites are numbered ``0..n-1`` with site 0 the most significant index.
    """
    t = np.asarray(op).reshape(d, d, d, d)
    full = np.eye(d**n, dtype=complex).reshape((d,) * (2 * n))
    # contract op's input legs with the output legs of the identity
    out = np.tensordot(t, full, axes=([2, 3], [i, j]))
    out = np.moveaxis(out, [0, 1], [i, j])
    return out.reshape(d**n, d**n)


A1, A2, Q1, Q2 = 0, 1, 2, 3


def projector_16(eta, delta: float = DELTA_GEN) -> tuple[np.ndarray, np.ndarray]:
    """Auxiliary and quantum pair projectors lifted to the 16-dim space."""
    p = projector_p(eta, delta)
    return embed_two_site(p, A2, A1, 4), embed_two_site(p, Q1, Q2, 4)


def r_product_16(z, w, eta, delta: float = DELTA_GEN) -> np.ndarray:
    """Ordered product of the four gauge-transformed R-matrices (no projectors)."""
    return (
        embed_two_site(r_plus(z + eta, w, eta, delta), A2, Q2, 4)
        @ embed_two_site(r_plus(z + eta, w + eta, eta, delta), A2, Q1, 4)
        @ embed_two_site(r_plus(z, w, eta, delta), A1, Q2, 4)
        @ embed_two_site(r_plus(z, w + eta, eta, delta), A1, Q1, 4)
    )


def r1_plus_16(z, w, eta, delta: float = DELTA_GEN) -> np.ndarray:
    pa, pq = projector_16(eta, delta)
    return pq @ pa @ r_product_16(z, w, eta, delta) @ pa @ pq


def fusion_residuals(z, w, eta, delta: float = DELTA_GEN) -> tuple[float, float]:
    """Absorption residuals of the quantum and auxiliary pair projectors.

    For the unprojected product ``X`` returns the operator norms of
    ``P_q X P_q - P_q X`` and ``P_a X P_a - P_a X``.
    """
    pa, pq = projector_16(eta, delta)
    prod = r_product_16(z, w, eta, delta)
    quantum = np.linalg.norm(pq @ prod @ pq - pq @ prod, 2)
    aux = np.linalg.norm(pa @ prod @ pa - pa @ prod, 2)
    return float(quantum), float(aux)


@dataclass(frozen=True)
class Spin1Embedding:
    """Spin-1 basis inside a spin-1/2 pair; ``project = embed.T``."""

    embed: np.ndarray
    project: np.ndarray

    @classmethod
    def build(cls, eta, first_is_low: bool = True) -> "Spin1Embedding":
        """``first_is_low`` selects the Kronecker order of the pair.

        The middle state is ``n (|+-> + e^{-eta} |-+>)`` with the pair listed
        as (first projector factor, second projector factor).  For the
        auxiliary pair the projector runs ``(a2, a1)`` while the matrices use
        ``(a1, a2)``; pass ``first_is_low=False`` there.
        """
        n = 1 / np.sqrt(1 + np.exp(-2 * eta))
        e = np.zeros((4, 3), dtype=complex)
        e[0, 0] = 1
        e[3, 2] = 1
        if first_is_low:
            e[1, 1], e[2, 1] = n, n * np.exp(-eta)
        else:
            e[1, 1], e[2, 1] = n * np.exp(-eta), n
        return cls(e, e.T.copy())


def spin1_embeddings(eta) -> tuple[Spin1Embedding, Spin1Embedding]:
    """(auxiliary, quantum) embeddings in ``(a1, a2)`` / ``(q1, q2)`` order."""
    return Spin1Embedding.build(eta, first_is_low=False), Spin1Embedding.build(eta, first_is_low=True)


def r1_plus(z, w, eta, delta: float = DELTA_GEN) -> np.ndarray:
    aux, qu = spin1_embeddings(eta)
    x = r1_plus_16(z, w, eta, delta)
    return np.kron(aux.project, qu.project) @ x @ np.kron(aux.embed, qu.embed)


def r1(z, w, eta, delta: float = DELTA_GEN) -> np.ndarray:
    """Spin-1 R-matrix with the gauge factors removed."""
    g = np.kron(gauge_big(z), gauge_big(w))
    ginv = np.kron(gauge_big(-z), gauge_big(-w))
    return ginv @ r1_plus(z, w, eta, delta) @ g


def _proj2(label: str) -> np.ndarray:
    return np.diag([1.0, 0.0] if label == "+" else [0.0, 1.0]).astype(complex)


def _proj3(delta_label: int) -> np.ndarray:
    v = np.zeros(3)
    v[SPIN1_LABELS.index(delta_label)] = 1.0
    return np.diag(v).astype(complex)


@dataclass(frozen=True)
class FusionCoeffs:
    """Table ``table[delta][(eps, eps')]`` of pair-projector expansion coefficients."""

    table: dict
    residual: float

    def get(self, delta_label: int, pair: str) -> complex:
        return self.table[delta_label][pair]

    def support(self) -> set:
        return {(d, p) for d, row in self.table.items() for p, v in row.items() if abs(v) > 1e-12}


EXPECTED_SUPPORT = {(1, "++"), (-1, "--"), (0, "+-"), (0, "-+")}


def fusion_coeffs(eta, delta: float = DELTA_GEN, tol: float = 1e-10) -> FusionCoeffs:
    """Solve ``pi^delta P = P sum_{e e'} C^delta_{e e'} pi^e (x) pi^e'`` for ``C``.

    ``pi^delta`` acts on the spin-1 space and is lifted to the pair space with
    the quantum embedding.  Solved by least squares entrywise.
    """
    p = projector_p(eta, delta)
    qu = Spin1Embedding.build(eta, first_is_low=True)
    pairs = ["".join(x) for x in itertools.product(SPIN_HALF_LABELS, repeat=2)]
    basis = [(p @ np.kron(_proj2(x[0]), _proj2(x[1]))).ravel() for x in pairs]
    a = np.stack(basis, axis=1)
    table = {}
    worst = 0.0
    for d in SPIN1_LABELS:
        lhs = qu.embed @ _proj3(d) @ qu.project @ p
        coef, *_ = np.linalg.lstsq(a, lhs.ravel(), rcond=None)
        worst = max(worst, float(np.linalg.norm(a @ coef - lhs.ravel())))
        table[d] = {x: complex(c) for x, c in zip(pairs, coef)}
    if worst > tol:
        raise NoSolution(f"projector expansion residual {worst:.3g}")
    return FusionCoeffs(table, worst)


def fusion_coeff_residual(coeffs: FusionCoeffs, eta) -> float:
    """Largest operator-norm residual of the projector expansion identity."""
    p = projector_p(eta)
    qu = Spin1Embedding.build(eta, first_is_low=True)
    worst = 0.0
    for d in SPIN1_LABELS:
        lhs = qu.embed @ _proj3(d) @ qu.project @ p
        rhs = sum(coeffs.get(d, x + y) * p @ np.kron(_proj2(x), _proj2(y)) for x in "+-" for y in "+-")
        worst = max(worst, float(np.linalg.norm(lhs - rhs, 2)))
    return worst


def doubled_params(params: ModelParams19, check: bool = True, delta: float = DELTA_GEN) -> ModelParams6:
    """Spin-1/2 parameters of the doubled lattice.

    Rows ``(z1, z1 + eta, z2, z2 + eta, ...)``; columns
    ``(w1 + eta, w1, w2 + eta, w2, ...)``.  Pairs of rows differ by exactly
    ``eta``, so only the relaxed genericity conditions are checked.
    """
    eta = params.eta
    lams = [x for z in params.zs for x in (z, z + eta)]
    nus = [x for w in params.ws for x in (w + eta, w)]
    out = ModelParams6(eta, lams, nus)
    if check:
        check_generic(out, delta, relaxed=True)
    return out
