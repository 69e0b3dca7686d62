"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are coefficient vectors of length phi(m) in the power basis
1, zeta, ..., zeta^(phi(m)-1), reduced modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Division of coefficient lists (lowest degree first); ``den`` must be nonzero."""
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[: len(den) - 1] or [Fraction(0)]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Phi_m as coefficients, lowest degree first: (x^m - 1) divided by Phi_d for all proper divisors d."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem), "x^m - 1 not divisible by a cyclotomic factor"
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CyclotomicScalar:
    """An immutable element of Q(zeta_m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        phi = cyclotomic_polynomial(m)
        n = len(phi) - 1
        c = [Fraction(x) for x in coeffs]
        if len(c) > n:
            _, c = _poly_divmod(c, list(phi))
        c = c + [Fraction(0)] * (n - len(c))
        self.m = m
        self.coeffs = tuple(c[:n])

    @classmethod
    def zeta_power(cls, m: int, e: int) -> CyclotomicScalar:
        return _zeta_power(m, e % m)

    @classmethod
    def rational(cls, m: int, q) -> CyclotomicScalar:
        return cls(m, [q])

    def _same(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicScalar.rational(self.m, other)
        if not isinstance(other, CyclotomicScalar):
            return None
        if other.m != self.m:
            raise ValueError(f"cannot combine Q(zeta_{self.m}) with Q(zeta_{other.m})")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return CyclotomicScalar(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicScalar(self.m, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = CyclotomicScalar.rational(self.m, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"Q(zeta_{self.m})[{' + '.join(terms) or '0'}]"


@lru_cache(maxsize=4096)
def _zeta_power(m: int, e: int) -> CyclotomicScalar:
    return CyclotomicScalar(m, [0] * e + [1])
