"""Exact arithmetic in cyclotomic fields Q(xi_m), xi_m = exp(2 pi i / m).

Elements are stored in the power basis 1, xi, ..., xi^(phi(m)-1), i.e.
reduced modulo the m-th cyclotomic polynomial, which makes the
representation canonical for a fixed conductor. Operands with different
conductors are lifted to the lcm before combining.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


def _poly_divmod_monic(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (ascending coefficients) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    if len(num) <= dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    return quot, num[:dn]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_monic(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(poly)


def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def reduce_power_sum(coeffs: dict[int, object] | Sequence, m: int) -> tuple:
    """Reduce ``sum c_j xi_m^j`` (any integer j) to the power basis.

    Works for int or Fraction coefficients; returns a tuple of length
    ``phi(m)``.
    """
    buf = [0] * m
    items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
    for j, c in items:
        if c:
            buf[j % m] += c
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    for i in range(m - 1, deg - 1, -1):
        c = buf[i]
        if c:
            for j in range(deg + 1):
                buf[i - deg + j] -= c * phi[j]
    return tuple(buf[:deg])


class Cyclotomic:
    """Immutable element of ``Q(xi_m)``."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence = ()):
        m = int(conductor)
        if m < 1:
            raise ValueError("conductor must be positive")
        red = reduce_power_sum(list(coeffs), m) if len(coeffs) else (0,) * totient(m)
        object.__setattr__(self, "conductor", m)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in red))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, m: int, coeffs: tuple) -> "Cyclotomic":
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", m)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def rational(cls, x, conductor: int = 1) -> "Cyclotomic":
        n = totient(conductor)
        return cls._raw(conductor, (Fraction(x),) + (Fraction(0),) * (n - 1))

    @classmethod
    def root(cls, m: int, j: int = 1) -> "Cyclotomic":
        """``xi_m ** j``."""
        buf = {j % m: 1}
        return cls._raw(m, tuple(Fraction(c) for c in reduce_power_sum(buf, m)))

    @classmethod
    def exp2pi(cls, x) -> "Cyclotomic":
        """``exp(2 pi i x)`` for rational ``x``."""
        x = Fraction(x)
        return cls.root(x.denominator, x.numerator)

    # -- conductor handling ------------------------------------------------

    def lift(self, m: int) -> "Cyclotomic":
        """The same number written in ``Q(xi_m)``; ``m`` must be a multiple."""
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {m}")
        step = m // self.conductor
        buf = {j * step: c for j, c in enumerate(self.coeffs) if c}
        return Cyclotomic._raw(m, reduce_power_sum(buf, m) if buf else (Fraction(0),) * totient(m))

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        m = math.lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            c = Fraction(other)
            return Cyclotomic._raw(self.conductor, tuple(x * c for x in self.coeffs))
        a, b = self._common(other)
        buf: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        buf[i + j] = buf.get(i + j, 0) + x * y
        m = a.conductor
        red = reduce_power_sum(buf, m) if buf else (0,) * totient(m)
        return Cyclotomic._raw(m, tuple(Fraction(c) for c in red))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse, via the regular representation."""
        from .lattice import inverse as mat_inverse

        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m, n = self.conductor, len(self.coeffs)
        basis = [Cyclotomic.root(m, j) for j in range(n)]
        # column j = coordinates of self * xi^j
        cols = [(self * b).coeffs for b in basis]
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        inv = mat_inverse(mat)
        one = [Fraction(int(i == 0)) for i in range(n)]
        return Cyclotomic._raw(m, tuple(sum(inv[i][k] * one[k] for k in range(n)) for i in range(n)))

    def __truediv__(self, other):
        if not isinstance(other, Cyclotomic):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, e: int):
        e = int(e)
        base = self if e >= 0 else self.inverse()
        result = Cyclotomic.rational(1, self.conductor)
        e = abs(e)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates and conversion ----------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        """True when every power-basis coordinate is an integer."""
        return all(c.denominator == 1 for c in self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # equal values may carry different conductors

    def __complex__(self):
        m = self.conductor
        w = cmath.exp(2j * cmath.pi / m)
        return complex(sum(float(c) * w**j for j, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"
