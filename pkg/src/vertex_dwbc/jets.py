"""Truncated Laurent/Taylor series in one variable ("jets").

A :class:`Jet` stores ``f(base + t) = sum_{n = val}^{prec} coeffs[n - val] t^n``
exactly up to the exponent ``prec``.  ``val`` may be negative, which lets a
jet carry a pole of known order; structural zeros (``sh`` at an exact zero of
its argument) are represented by a positive ``val`` rather than by a tiny
leading coefficient.  Coefficients may be Python complex numbers or
``mpmath`` numbers; no numerical differentiation is ever performed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivisionByZeroJet
from .weights import ch, sh

ZERO_FLOOR = 1e-30


def _zero_like(x):
    return x * 0


@dataclass(frozen=True)
class Jet:
    base: object
    coeffs: tuple
    val: int = 0

    @property
    def order(self) -> int:
        """Number of stored terms minus one."""
        return len(self.coeffs) - 1

    @property
    def prec(self) -> int:
        """Highest exponent known exactly."""
        return self.val + len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int, base=0) -> "Jet":
        z = _zero_like(value)
        return cls(base, (value,) + (z,) * order)

    @classmethod
    def variable(cls, base, order: int, one=1.0) -> "Jet":
        """The identity function ``x = base + t``."""
        z = _zero_like(one)
        return cls(base, (base + z, one) + (z,) * (order - 1))

    @classmethod
    def sh_shift(cls, c, order: int, sign: int = 1, exact_zero: bool = False, base=0) -> "Jet":
        """Series of ``sh(c + sign t)``.

        With ``exact_zero`` the constant ``c`` is known to vanish exactly; the
        result then has valuation one and carries no rounding noise.
        """
        if exact_zero:
            one = ch(c)
            coeffs = []
            fact = 1
            for n in range(1, order + 2):
                fact *= n
                coeffs.append(one * (sign**n) / fact if n % 2 else _zero_like(one))
            return cls(base, tuple(coeffs), 1)
        s0, c0 = sh(c), ch(c)
        coeffs = []
        fact = 1
        for n in range(order + 1):
            if n:
                fact *= n
            coeffs.append((s0 if n % 2 == 0 else c0) * (sign**n) / fact)
        return cls(base, tuple(coeffs), 0)

    def coeff(self, n: int):
        if n > self.prec:
            raise ValueError(f"coefficient {n} beyond precision {self.prec}")
        if n < self.val:
            return _zero_like(self.coeffs[0])
        return self.coeffs[n - self.val]

    def derivative_value(self, m: int):
        """``f^{(m)}(base)`` as ``m!`` times the Taylor coefficient."""
        return self.coeff(m) * math.factorial(m)

    def truncate(self, prec: int) -> "Jet":
        keep = prec - self.val + 1
        if keep >= len(self.coeffs):
            return self
        if keep <= 0:
            return Jet(self.base, (_zero_like(self.coeffs[0]),), prec)
        return Jet(self.base, self.coeffs[:keep], self.val)

    def _binary_align(self, other: "Jet"):
        lo = min(self.val, other.val)
        hi = min(self.prec, other.prec)
        z = _zero_like(self.coeffs[0])
        a = [self.coeff(n) if n >= self.val else z for n in range(lo, hi + 1)]
        b = [other.coeff(n) if n >= other.val else z for n in range(lo, hi + 1)]
        return lo, a, b

    def __add__(self, other):
        if not isinstance(other, Jet):
            return self + Jet.constant(other, max(self.prec, 0), self.base)
        lo, a, b = self._binary_align(other)
        return Jet(self.base, tuple(x + y for x, y in zip(a, b)), lo)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.base, tuple(-x for x in self.coeffs), self.val)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.base, tuple(x * other for x in self.coeffs), self.val)
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        length = prec - val + 1
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(length):
            acc = _zero_like(a[0])
            for i in range(max(0, n - len(b) + 1), min(n, len(a) - 1) + 1):
                acc += a[i] * b[n - i]
            out.append(acc)
        return Jet(self.base, tuple(out), val)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        g = self.coeffs
        if abs(g[0]) < ZERO_FLOOR:
            raise DivisionByZeroJet("leading coefficient vanishes")
        inv0 = 1 / g[0]
        h = [inv0]
        for n in range(1, len(g)):
            acc = _zero_like(inv0)
            for i in range(1, n + 1):
                acc += g[i] * h[n - i]
            h.append(-acc * inv0)
        return Jet(self.base, tuple(h), -self.val)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.base, tuple(x / other for x in self.coeffs), self.val)
        if other.val == 0 and abs(other.coeffs[0]) < ZERO_FLOOR:
            raise DivisionByZeroJet("constant term vanishes")
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        if k == 0:
            return Jet.constant(self.coeffs[0] * 0 + 1, self.prec - self.val, self.base)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def derivative(self) -> "Jet":
        """Termwise derivative in ``t``."""
        out = tuple((self.val + i) * c for i, c in enumerate(self.coeffs))
        if self.val == 0:
            if len(out) == 1:
                return Jet(self.base, (_zero_like(self.coeffs[0]),), self.prec)
            return Jet(self.base, out[1:], 0)
        return Jet(self.base, out, self.val - 1)

    def compose_sh(self) -> "Jet":
        """``sh`` of a Taylor jet (``val == 0``), by the coupled sh/ch recurrences."""
        if self.val != 0:
            raise ValueError("compose_sh needs a Taylor jet")
        f = self.coeffs
        k = len(f)
        s = [sh(f[0])]
        c = [ch(f[0])]
        for n in range(1, k):
            acc_s = _zero_like(s[0])
            acc_c = _zero_like(s[0])
            for i in range(1, n + 1):
                acc_s += i * f[i] * c[n - i]
                acc_c += i * f[i] * s[n - i]
            s.append(acc_s / n)
            c.append(acc_c / n)
        return Jet(self.base, tuple(s), 0)
