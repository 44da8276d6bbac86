"""T_y-type genera of complete multi-fans.

Polynomials are written in the variable ``w = -y``. The plain genus comes
from the h-vector; the orbifold and modified orbifold versions add one
term ``w^f T_y(Delta_K)`` per twisted sector ``(K, h)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import lattice as lat
from .cohomology import c1_is_zero, divisibility, t_cartier_divisibility
from .cyclotomic import Cyclotomic
from .fan import MultiFan, _require_complete, e_vector, h_vector, project, twisted_sectors, group_HI


class PreconditionUnmet(ValueError):
    """A theorem check was requested outside its hypotheses."""


def _fmt_exp(e: Fraction) -> str:
    return str(e) if e.denominator == 1 else f"({e})"


@dataclass(frozen=True)
class FracExpPoly:
    """``sum c_e w^e`` with rational exponents ``e`` and integer ``c_e``."""

    terms: tuple[tuple[Fraction, int], ...]

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[Fraction, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = Fraction(e)
            acc[e] = acc.get(e, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "FracExpPoly":
        return cls(enumerate(coeffs))

    @classmethod
    def monomial(cls, e, c: int = 1) -> "FracExpPoly":
        return cls([(e, c)])

    @property
    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.terms)

    def __add__(self, other: "FracExpPoly") -> "FracExpPoly":
        return FracExpPoly(self.terms + other.terms)

    def __neg__(self) -> "FracExpPoly":
        return FracExpPoly((e, -c) for e, c in self.terms)

    def __sub__(self, other: "FracExpPoly") -> "FracExpPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FracExpPoly((e, c * other) for e, c in self.terms)
        return FracExpPoly((a + b, c * d) for a, c in self.terms for b, d in other.terms)

    __rmul__ = __mul__

    def shift(self, e) -> "FracExpPoly":
        return FracExpPoly((a + Fraction(e), c) for a, c in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def has_integer_exponents(self) -> bool:
        return all(e.denominator == 1 for e, _ in self.terms)

    def coefficients(self) -> list[int]:
        """Dense coefficient list ``[c_0, c_1, ...]`` (integer exponents >= 0 only)."""
        if not self.has_integer_exponents() or any(e < 0 for e, _ in self.terms):
            raise ValueError("not a polynomial in w")
        if not self.terms:
            return []
        out = [0] * (int(self.terms[-1][0]) + 1)
        for e, c in self.terms:
            out[int(e)] = c
        return out

    def in_y(self) -> dict[Fraction, int]:
        """Coefficients in ``y`` (only for integer exponents): ``(-y)^e = (-1)^e y^e``."""
        return {e: c * (-1) ** int(e) for e, c in self.terms if e.denominator == 1}

    def evaluate(self, sigma) -> Cyclotomic:
        """Value at ``w = exp(2 pi i sigma)``, with ``w^e = exp(2 pi i sigma e)``."""
        sigma = Fraction(sigma)
        total = Cyclotomic.rational(0)
        for e, c in self.terms:
            total = total + Cyclotomic.exp2pi(sigma * e) * c
        return total

    def divmod_cyclotomic_sum(self, N: int) -> tuple[list[int], list[int]]:
        """Quotient and remainder on division by ``1 + w + ... + w^(N-1)``."""
        num = self.coefficients()
        div = [1] * N
        if len(num) < N:
            return [], num
        num = list(num)
        quot = [0] * (len(num) - N + 1)
        for i in range(len(num) - 1, N - 2, -1):
            c = num[i]
            if c:
                quot[i - N + 1] = c
                for j in range(N):
                    num[i - N + 1 + j] -= c * div[j]
        return quot, num[: N - 1]

    def __str__(self):
        return self.format("y")

    def format(self, var: str = "y") -> str:
        """Human readable form in ``y`` (or ``w`` when ``var == 'w'``)."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if var == "y" and e.denominator == 1:
                c = c * (-1) ** int(e)
                mono = "" if e == 0 else ("y" if e == 1 else f"y^{e}")
            else:
                base = "w" if var == "w" else "(-y)"
                mono = "" if e == 0 else (base if e == 1 else f"{base}^{_fmt_exp(e)}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def machine(self) -> str:
        return ";".join(f"{e}:{c}" for e, c in self.terms) or "0"


@dataclass(frozen=True)
class CyclicExpPoly:
    """Element of ``Z[w]/(w^N - 1)``; ``coeffs[j]`` multiplies ``w^j``."""

    N: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.N < 1 or len(self.coeffs) != self.N:
            raise ValueError("need exactly N coefficients")

    @classmethod
    def from_terms(cls, N: int, terms: Iterable[tuple[int, int]]) -> "CyclicExpPoly":
        buf = [0] * N
        for e, c in terms:
            buf[int(e) % N] += int(c)
        return cls(N, tuple(buf))

    def evaluate(self, l: int) -> Cyclotomic:
        """Value at ``w = exp(2 pi i l / N)``."""
        total = Cyclotomic.rational(0, self.N)
        for j, c in enumerate(self.coeffs):
            if c:
                total = total + Cyclotomic.root(self.N, j * l) * c
        return total

    def vanishes_at_nontrivial_roots(self) -> bool:
        return all(self.evaluate(l).is_zero() for l in range(1, self.N))

    def is_multiple_of_cyclotomic_sum(self) -> bool:
        """Constant coefficients: ``c (1 + w + ... + w^(N-1))``."""
        return len(set(self.coeffs)) == 1

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
                parts.append(str(c) if not mono else mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return (" + ".join(parts).replace("+ -", "- ") or "0") + f"  (mod w^{self.N} - 1)"

    def machine(self) -> str:
        return f"N={self.N};" + ",".join(map(str, self.coeffs))


# ---------------------------------------------------------------------------
# genera


def ty_genus(fan: MultiFan) -> FracExpPoly:
    """``T_y = sum h_k (-y)^k``."""
    return FracExpPoly.from_coefficients(h_vector(fan))


def ty_via_e(fan: MultiFan) -> FracExpPoly:
    """``T_y = sum e_k (-1 - y)^(n-k)``, expanded in ``w = -y`` as ``(w - 1)^(n-k)``."""
    n = fan.rank
    out: dict[int, int] = {}
    for k, ek in enumerate(e_vector(fan)):
        p = n - k
        for j in range(p + 1):
            out[j] = out.get(j, 0) + ek * math.comb(p, j) * (-1) ** (p - j)
    return FracExpPoly(out)


def _sector_terms(fan: MultiFan):
    """Yield ``(FractionData, T_y(Delta_K))`` over all twisted sectors."""
    cache: dict[frozenset, FracExpPoly] = {}
    for d in twisted_sectors(fan):
        if d.K not in cache:
            proj = project(fan, d.K)
            cache[d.K] = FracExpPoly.from_coefficients(h_vector(proj, check=False))
        yield d, cache[d.K]


def orbifold_ty(fan: MultiFan) -> FracExpPoly:
    """``sum over (K, h) of w^{f_{K,h}} T_y(Delta_K)``."""
    _require_complete(fan)
    total = FracExpPoly()
    for d, ty in _sector_terms(fan):
        total = total + ty.shift(d.total)
    return total


def coprime_to_groups(fan: MultiFan, N: int) -> bool:
    return all(math.gcd(N, group_HI(fan, I).order) == 1 for I in fan.maximal)


def modified_orbifold_ty(fan: MultiFan, N: int) -> CyclicExpPoly:
    """``sum over (K, h) of w^{breve f_{K,h}} T_y(Delta_K)`` modulo ``w^N = 1``."""
    _require_complete(fan)
    if N <= 1:
        raise ValueError("N must exceed 1")
    if not coprime_to_groups(fan, N):
        raise lat.NotCoprime(f"N={N} shares a factor with some |H_I|")
    terms = []
    for d, ty in _sector_terms(fan):
        b = lat.breve(d.total, N)
        terms.extend((b + int(e), c) for e, c in ty.terms)
    return CyclicExpPoly.from_terms(N, terms)


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a genus-level theorem check, with the objects inspected."""

    holds: bool
    detail: str
    poly: object = None
    certificates: tuple[tuple[str, bool], ...] = ()

    def __bool__(self):
        return self.holds


def check_hatT_divisible(fan: MultiFan, N: int) -> CheckResult:
    """Orbifold T_y is an integer polynomial divisible by ``sum_{k<N} w^k``."""
    if not t_cartier_divisibility(fan, N).t_cartier_divisible:
        raise PreconditionUnmet(f"c1 is not T-Cartier divisible by {N}")
    p = orbifold_ty(fan)
    if not p.has_integer_exponents():
        return CheckResult(False, "fractional exponents present", p)
    quot, rem = p.divmod_cyclotomic_sum(N)
    ok = not any(rem)
    q = FracExpPoly.from_coefficients(quot)
    detail = f"quotient {q.format('w')}" if ok else f"remainder {FracExpPoly.from_coefficients(rem).format('w')}"
    return CheckResult(ok, detail, p, (("remainder-zero", ok),))


def check_breve_vanishing(fan: MultiFan, N: int) -> CheckResult:
    """Breve T_y vanishes at every N-th root of unity other than 1.

    Two certificates are computed: exact evaluation at each root, and the
    shape ``c (1 + w + ... + w^(N-1))`` of the reduced polynomial.
    """
    if not coprime_to_groups(fan, N):
        raise PreconditionUnmet(f"N={N} is not coprime to every |H_I|")
    if not divisibility(fan, N):
        raise PreconditionUnmet(f"c1 is not divisible by {N}")
    p = modified_orbifold_ty(fan, N)
    roots = p.vanishes_at_nontrivial_roots()
    shape = p.is_multiple_of_cyclotomic_sum()
    if roots != shape:
        raise AssertionError(f"vanishing certificates disagree on {p}")
    return CheckResult(roots, str(p), p, (("root-evaluation", roots), ("cyclotomic-multiple", shape)))


def check_hatT_vanishing(fan: MultiFan) -> CheckResult:
    """Orbifold T_y is identically zero (requires ``c_1 = 0``)."""
    if not c1_is_zero(fan):
        raise PreconditionUnmet("c1 is not zero")
    p = orbifold_ty(fan)
    return CheckResult(p.is_zero(), str(p), p, (("zero-polynomial", p.is_zero()),))
