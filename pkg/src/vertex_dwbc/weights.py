"""Spectral parameters and scalar Boltzmann weights.

All rapidities are complex.  Scalar functions accept Python/numpy complex
numbers as well as ``mpmath`` numbers; the hyperbolic functions are taken
from ``mpmath`` whenever one of the arguments is an ``mpmath`` type, so the
same code path serves the double and the extended precision evaluators.

Conventions::

    a(lam, nu) = sh(lam - nu + eta/2)     b(lam, nu) = sh(lam - nu - eta/2)
    c          = sh(eta)                  d(lam, nu) = sh(lam - nu)
    e(lam, nu) = sh(lam - nu + eta)       phi        = c / (a b)
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import SamplingFailed, SingularWeight

DELTA_GEN = 1e-3
MAX_REJECTIONS = 10_000

_MP_TYPES = (mpmath.mpc, mpmath.mpf)


def sh(x):
    if isinstance(x, _MP_TYPES):
        return mpmath.sinh(x)
    return cmath.sinh(x)


def ch(x):
    if isinstance(x, _MP_TYPES):
        return mpmath.cosh(x)
    return cmath.cosh(x)


def cexp(x):
    if isinstance(x, _MP_TYPES):
        return mpmath.exp(x)
    return cmath.exp(x)


def as_complex(value) -> complex:
    """Coerce a scalar, a ``[re, im]`` pair or a string to ``complex``."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"expected [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", "").replace("i", "j"))
    if isinstance(value, _MP_TYPES):
        return complex(value)
    return complex(value)


@dataclass(frozen=True)
class ModelParams6:
    """Spectral data of the six-vertex lattice.

    ``lambdas[alpha]`` is the rapidity of row ``alpha + 1``; ``nus[k]`` that of
    column ``k + 1``.
    """

    eta: complex
    lambdas: tuple = field(default_factory=tuple)
    nus: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "eta", as_complex(self.eta))
        object.__setattr__(self, "lambdas", tuple(as_complex(x) for x in self.lambdas))
        object.__setattr__(self, "nus", tuple(as_complex(x) for x in self.nus))
        if len(self.lambdas) != len(self.nus):
            raise ValueError("lambdas and nus must have the same length")
        if len(self.lambdas) < 1:
            raise ValueError("at least one row is required")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def shifted(self, kappa: complex) -> "ModelParams6":
        return ModelParams6(self.eta, [x + kappa for x in self.lambdas], [x + kappa for x in self.nus])


@dataclass(frozen=True)
class ModelParams19:
    """Spectral data of the spin-1 lattice: rows ``zs``, columns ``ws``."""

    eta: complex
    zs: tuple = field(default_factory=tuple)
    ws: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "eta", as_complex(self.eta))
        object.__setattr__(self, "zs", tuple(as_complex(x) for x in self.zs))
        object.__setattr__(self, "ws", tuple(as_complex(x) for x in self.ws))
        if len(self.zs) != len(self.ws):
            raise ValueError("zs and ws must have the same length")
        if len(self.zs) < 1:
            raise ValueError("at least one row is required")

    @property
    def n(self) -> int:
        return len(self.zs)


def weight(kind: str, lam, nu, eta):
    """Scalar weight of the given ``kind`` in ``{a, b, c, d, e}``."""
    if kind == "a":
        return sh(lam - nu + eta / 2)
    if kind == "b":
        return sh(lam - nu - eta / 2)
    if kind == "c":
        return sh(eta)
    if kind == "d":
        return sh(lam - nu)
    if kind == "e":
        return sh(lam - nu + eta)
    raise ValueError(f"unknown weight kind {kind!r}")


def wa(lam, nu, eta):
    return sh(lam - nu + eta / 2)


def wb(lam, nu, eta):
    return sh(lam - nu - eta / 2)


def wd(lam, nu):
    return sh(lam - nu)


def we(lam, nu, eta):
    return sh(lam - nu + eta)


def phi(lam, nu, eta, delta: float = DELTA_GEN):
    ab = wa(lam, nu, eta) * wb(lam, nu, eta)
    if abs(ab) < delta**2:
        raise SingularWeight(f"a*b = {complex(ab):.3g} vanishes at lam - nu = {complex(lam - nu)}")
    return sh(eta) / ab


def fg(mu, lam, eta, delta: float = DELTA_GEN):
    """Return ``(f(mu, lam), g(mu, lam))``."""
    den = sh(lam - mu)
    if abs(den) < delta:
        raise SingularWeight("f and g have a pole at lam = mu")
    return sh(lam - mu + eta) / den, sh(eta) / den


def genericity_violations(params: ModelParams6, delta: float = DELTA_GEN, relaxed: bool = False) -> list[str]:
    """List every genericity condition that fails.

    With ``relaxed=True`` the row conditions ``|sh(lam_a - lam_b +- eta)|``
    are skipped; fused (doubled) parameters violate them by construction.
    """
    eta = params.eta
    lam, nu = params.lambdas, params.nus
    n = params.n
    bad = []
    if abs(sh(eta)) < delta:
        bad.append("sh(eta)")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if abs(sh(lam[i] - lam[j])) < delta:
                bad.append(f"sh(lam{i + 1} - lam{j + 1})")
            if not relaxed and abs(sh(lam[i] - lam[j] + eta)) < delta:
                bad.append(f"sh(lam{i + 1} - lam{j + 1} + eta)")
            if abs(sh(nu[i] - nu[j])) < delta:
                bad.append(f"sh(nu{i + 1} - nu{j + 1})")
    for i in range(n):
        for k in range(n):
            for sgn in (1, -1):
                if abs(sh(lam[i] - nu[k] + sgn * eta / 2)) < delta:
                    bad.append(f"sh(lam{i + 1} - nu{k + 1} {'+' if sgn > 0 else '-'} eta/2)")
    return bad


def is_generic(params: ModelParams6, delta: float = DELTA_GEN, relaxed: bool = False) -> bool:
    return not genericity_violations(params, delta, relaxed)


def check_generic(params: ModelParams6, delta: float = DELTA_GEN, relaxed: bool = False) -> None:
    bad = genericity_violations(params, delta, relaxed)
    if bad:
        raise SingularWeight("non-generic parameters: " + ", ".join(bad[:4]))


def _draw(rng: np.random.Generator, n: int) -> list[complex]:
    re = rng.uniform(-0.5, 0.5, n)
    im = rng.uniform(-0.5, 0.5, n)
    return [complex(x, y) for x, y in zip(re, im)]


def sample_generic_params(n: int, seed: int, eta=0.8, delta: float = DELTA_GEN) -> ModelParams6:
    """Draw generic six-vertex parameters deterministically.

    Uses ``numpy.random.Generator(PCG64(seed))``.  Real and imaginary parts of
    every rapidity are uniform on ``[-0.5, 0.5]``; the whole set is redrawn
    until all genericity conditions hold.
    """
    if n < 1:
        raise ValueError("n must be positive")
    eta = as_complex(eta)
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(MAX_REJECTIONS):
        params = ModelParams6(eta, _draw(rng, n), _draw(rng, n))
        if is_generic(params, delta):
            return params
    raise SamplingFailed(f"no generic parameters after {MAX_REJECTIONS} draws (eta={eta})")


def sample_generic_params19(n: int, seed: int, eta=0.8, delta: float = DELTA_GEN) -> ModelParams19:
    """Spin-1 analogue of :func:`sample_generic_params`.

    Genericity is required of the doubled six-vertex parameters (relaxed
    form) plus ``|sh(z_a - z_b +- 2 eta)| >= delta``.
    """
    from .fusion import doubled_params

    if n < 1:
        raise ValueError("n must be positive")
    eta = as_complex(eta)
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(MAX_REJECTIONS):
        params = ModelParams19(eta, _draw(rng, n), _draw(rng, n))
        zs = params.zs
        if any(abs(sh(zs[i] - zs[j] + 2 * eta)) < delta for i in range(n) for j in range(n) if i != j):
            continue
        if is_generic(doubled_params(params, check=False), delta, relaxed=True):
            return params
    raise SamplingFailed(f"no generic parameters after {MAX_REJECTIONS} draws (eta={eta})")
