"""q-expansions of the elliptic genera of a multi-fan along a generic vector.

Along ``v`` the genus becomes a series in ``q^(1/rho)`` whose coefficients
are Laurent polynomials in ``t`` over ``Q(xi_m)``. The factor
``zeta^(-1/2)`` of every ``phi`` is not stored: coefficients are kept in
the normalized form ``zeta^(n/2) * genus`` and :attr:`GenusQSeries.zeta_shift`
records the dropped power.

Internally the engine works in the group ring ``Z[Z/m][s, s^-1]`` where
``s = t^(1/tden)`` absorbs fractional pairings ``<u_i^I, v>``. Each term
is ``numerator / prod(1 - xi^l s^a)``; the sum over all cones is put over
a common denominator and divided out exactly at the end. A nonzero
remainder means the sum is not a Laurent polynomial, which the theory
rules out, so it is raised as :class:`PolynomialityFailure`.
"""

from __future__ import annotations

import cmath
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice as lat
from .cyclotomic import Cyclotomic, reduce_power_sum, totient
from .fan import (
    MultiFan,
    NotGeneric,
    _require_complete,
    default_vector,
    group_HI,
    is_generic,
    reduced_element,
    twisted_sectors,
)
from .genera import coprime_to_groups, modified_orbifold_ty, orbifold_ty, ty_genus

KINDS = ("plain", "orbifold", "breve")


class PolynomialityFailure(ArithmeticError):
    """A summed q-coefficient failed to reduce to a Laurent polynomial."""


class IntegralityFailure(ArithmeticError):
    """A normalized coefficient has non-integral cyclotomic coordinates."""


class DegenerateFactor(ValueError):
    """A ``phi`` factor with no ``t`` dependence in its pole (non-generic ``v``)."""


class PoleProximity(ArithmeticError):
    """Numeric evaluation too close to a pole of the truncated product."""


# ---------------------------------------------------------------------------
# raw group-ring arithmetic: Poly = {(s_exp, xi_exp mod m): int}
# Series = {q_exp: Poly}


def _padd(acc: dict, p: dict, k: int = 1) -> None:
    for key, c in p.items():
        v = acc.get(key, 0) + k * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def _pmul(a: dict, b: dict, m: int) -> dict:
    out: dict = {}
    for (sa, xa), ca in a.items():
        for (sb, xb), cb in b.items():
            key = (sa + sb, (xa + xb) % m)
            out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _smul(A: dict, B: dict, m: int, top: int) -> dict:
    out: dict = {}
    for qa, pa in A.items():
        for qb, pb in B.items():
            q = qa + qb
            if q > top:
                continue
            acc = out.setdefault(q, {})
            for (sa, xa), ca in pa.items():
                for (sb, xb), cb in pb.items():
                    key = (sa + sb, (xa + xb) % m)
                    acc[key] = acc.get(key, 0) + ca * cb
    return {q: {k: c for k, c in p.items() if c} for q, p in out.items()}


def _piece(c: int, beta: int, b: int, e: int, top: int, m: int) -> dict:
    """``1 + (1 - xi^c) sum_{j>=1} (xi^beta s^b q^e)^j`` truncated at ``q^top``."""
    series = {0: {(0, 0): 1}}
    j = 1
    while j * e <= top:
        s_exp, x = j * b, (j * beta) % m
        p = series.setdefault(j * e, {})
        p[(s_exp, x)] = p.get((s_exp, x), 0) + 1
        key = (s_exp, (x + c) % m)
        p[key] = p.get(key, 0) - 1
        j += 1
    return {q: {k: v for k, v in p.items() if v} for q, p in series.items()}


@dataclass(frozen=True)
class Binomial:
    """``1 - xi_m^l s^a`` with ``a > 0``."""

    a: int
    l: int

    def poly(self) -> dict:
        return {(0, 0): 1, (self.a, self.l): -1}


def _canon(poly: dict, m: int) -> dict[int, tuple[int, ...]]:
    """Reduce modulo the m-th cyclotomic polynomial: ``{s_exp: coords}``."""
    by_s: dict[int, dict[int, int]] = {}
    for (s, x), c in poly.items():
        d = by_s.setdefault(s, {})
        d[x] = d.get(x, 0) + c
    out = {}
    for s, d in by_s.items():
        coords = reduce_power_sum(d, m)
        if any(coords):
            out[s] = tuple(coords)
    return out


def _uncanon(canon: dict[int, tuple[int, ...]]) -> dict:
    return {(s, x): c for s, coords in canon.items() for x, c in enumerate(coords) if c}


# ---------------------------------------------------------------------------
# single phi factor


@dataclass(frozen=True)
class PhiFactor:
    """Normalized ``zeta^(1/2) phi`` at ``exp(2 pi i z) = xi^l s^a q^(F/rho)``.

    ``series`` holds the numerator q-expansion; ``binomial`` is the
    denominator ``1 - xi^l s^|a|`` of the ``q^0`` part when ``F == 0``.
    """

    series: dict
    binomial: Binomial | None
    conductor: int
    rho: int

    def evaluate(self, s: complex, tau: complex, sigma) -> complex:
        """Numeric value of ``phi`` itself (the ``zeta^(-1/2)`` restored)."""
        m = self.conductor
        xi = cmath.exp(2j * cmath.pi / m)
        total = 0j
        for qe, p in self.series.items():
            qv = cmath.exp(2j * cmath.pi * tau * qe / self.rho)
            total += qv * sum(c * xi**x * s**se for (se, x), c in p.items())
        if self.binomial is not None:
            total /= 1 - xi**self.binomial.l * s**self.binomial.a
        return total * cmath.exp(-1j * cmath.pi * float(Fraction(sigma)))


def _phi_raw(a: int, F: int, l: int, zx: int, rho: int, top: int, m: int):
    """Numerator series and optional denominator binomial of one factor."""
    if F == 0 and a == 0:
        if l % m == 0:
            raise DegenerateFactor("pole of 1/(1 - t) with no t dependence: v is not generic")
        raise DegenerateFactor("factor without t dependence: v is not generic")
    num = {0: {(0, 0): 1}}
    binom = None
    if F > 0:
        num = _smul(num, _piece(zx, l, a, F, top, m), m, top)
    else:
        lead = {(0, 0): 1, (a, (l + zx) % m): -1}
        if a < 0:
            # 1/(1 - xi^l s^a) = -xi^(-l) s^(-a) / (1 - xi^(-l) s^(-a))
            lead = _pmul(lead, {(-a, (-l) % m): -1}, m)
            binom = Binomial(-a, (-l) % m)
        else:
            binom = Binomial(a, l % m)
        num = {0: lead}
    k = 1
    while k * rho - F <= top:
        if k * rho + F <= top:
            num = _smul(num, _piece(zx, l, a, k * rho + F, top, m), m, top)
        num = _smul(num, _piece(-zx, -l, -a, k * rho - F, top, m), m, top)
        k += 1
    return num, binom


def phi_factor_expand(a, f, alpha, sigma, order: int) -> PhiFactor:
    """Expand ``phi`` at ``exp(2 pi i z) = alpha t^a q^f`` to q-order ``order``.

    ``a`` is an integer, ``f`` a rational in ``[0, 1)``, ``alpha`` a
    rational number ``x`` standing for the root of unity ``exp(2 pi i x)``.
    """
    f, x, sigma = Fraction(f), Fraction(alpha), Fraction(sigma)
    if not 0 <= f < 1:
        raise ValueError("f must lie in [0, 1)")
    rho = f.denominator
    m = math.lcm(x.denominator, sigma.denominator)
    series, binom = _phi_raw(int(a), int(f * rho), int(x * m) % m, int(sigma * m), rho, order * rho, m)
    return PhiFactor(series, binom, m, rho)


# ---------------------------------------------------------------------------
# the summation engine


@dataclass(frozen=True)
class _Setup:
    m: int
    zx: int
    rho: int
    top: int


def _term(spec, st: _Setup):
    mult, pre, factors = spec
    num = {0: {(0, pre % st.m): mult}}
    den: Counter = Counter()
    for a, F, l in factors:
        ser, binom = _phi_raw(a, F, l, st.zx, st.rho, st.top, st.m)
        num = _smul(num, ser, st.m, st.top)
        if binom is not None:
            den[binom] += 1
    key = tuple(sorted(((b.a, b.l), c) for b, c in den.items()))
    return key, num


def _accumulate(specs, st: _Setup) -> dict:
    groups: dict = {}
    for spec in specs:
        key, num = _term(spec, st)
        g = groups.setdefault(key, {})
        for q, p in num.items():
            _padd(g.setdefault(q, {}), p)
    return groups


def _work(args):
    specs, st = args
    return _accumulate(specs, st)


def _merge(into: dict, groups: dict) -> None:
    for key, ser in groups.items():
        g = into.setdefault(key, {})
        for q, p in ser.items():
            _padd(g.setdefault(q, {}), p)


def _run_specs(specs: list, st: _Setup, jobs: int) -> dict:
    if jobs <= 1 or len(specs) < 2:
        return _accumulate(specs, st)
    chunks = [specs[i::jobs] for i in range(jobs)]
    groups: dict = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_work, [(c, st) for c in chunks if c]):
            _merge(groups, part)
    return groups


def _divide(poly: dict, binom: Binomial, m: int) -> dict:
    """Exact division by ``1 - xi^l s^a``; the remainder must vanish in ``Q(xi_m)``."""
    if not poly:
        return {}
    smin = min(s for s, _ in poly)
    smax = max(s for s, _ in poly)
    a, l = binom.a, binom.l
    size = smax - smin + 1
    arr = [[0] * m for _ in range(size)]
    for (s, x), c in poly.items():
        arr[s - smin][x] += c
    if size <= a:
        quot = []
    else:
        quot = [[0] * m for _ in range(size - a)]
        for d in range(size - 1, a - 1, -1):
            cd = arr[d]
            if not any(cd):
                continue
            tgt, qd = arr[d - a], quot[d - a]
            for x, c in enumerate(cd):
                if c:
                    y = (x - l) % m
                    tgt[y] += c
                    qd[y] -= c
    rem = {}
    for d in range(min(a, size)):
        for x, c in enumerate(arr[d]):
            if c:
                rem[(d, x)] = c
    if _canon(rem, m):
        raise PolynomialityFailure(f"nonzero remainder on division by 1 - xi^{l} s^{a}")
    out = {}
    for d, row in enumerate(quot):
        for x, c in enumerate(row):
            if c:
                out[(d + smin, x)] = c
    return _uncanon(_canon(out, m))


def _finalize(groups: dict, m: int) -> dict[int, dict[int, tuple[int, ...]]]:
    """Common denominator, exact division; ``{q_exp: {s_exp: coords}}``."""
    common: Counter = Counter()
    for key in groups:
        for b, c in key:
            common[b] = max(common[b], c)
    binoms = sorted(common.items())
    totals: dict[int, dict] = {}
    for key, ser in groups.items():
        have = dict(key)
        missing = [Binomial(*b) for b, c in binoms for _ in range(c - have.get(b, 0))]
        for q, p in ser.items():
            p = _uncanon(_canon(p, m))
            for b in missing:
                p = _pmul(p, b.poly(), m)
            _padd(totals.setdefault(q, {}), p)
    out = {}
    for q, p in totals.items():
        p = _uncanon(_canon(p, m))
        for b, c in binoms:
            for _ in range(c):
                p = _divide(p, Binomial(*b), m)
        canon = _canon(p, m)
        if canon:
            out[q] = canon
    return out


# ---------------------------------------------------------------------------
# public series types


@dataclass(frozen=True)
class TLaurent:
    """Laurent polynomial in ``t`` with cyclotomic coefficients."""

    terms: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def constant_term(self) -> Cyclotomic:
        return self.terms.get(0, Cyclotomic.rational(0))

    def evaluate(self, t: complex) -> complex:
        return sum(complex(c) * t**j for j, c in self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, TLaurent):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = Cyclotomic.rational(0)
        return all(self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys)

    __hash__ = None

    def __str__(self):
        parts = []
        for j in sorted(self.terms):
            c = self.terms[j]
            if c.is_zero():
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class TFraction:
    """``numerator / prod(1 - alpha t^a)`` with the denominator kept factored."""

    numerator: TLaurent
    denominator: tuple  # of (a, alpha: Cyclotomic)

    def evaluate(self, t: complex) -> complex:
        val = self.numerator.evaluate(t)
        for a, alpha in self.denominator:
            val /= 1 - complex(alpha) * t**a
        return val


@dataclass(frozen=True)
class GenusQSeries:
    """Truncated q-series of a genus along ``v`` (``zeta^(n/2)``-normalized).

    ``coeffs`` maps each q-exponent (a ``Fraction`` with denominator
    dividing ``rho``) to ``{t_exp: power-basis coordinates in Q(xi_m)}``.
    """

    kind: str
    sigma: Fraction
    level: int
    order: int
    rho: int
    conductor: int
    rank: int
    v: tuple[int, ...]
    fingerprint: str
    coeffs: dict

    @property
    def zeta_shift(self) -> Fraction:
        return Fraction(-self.rank, 2)

    def coefficient(self, s) -> TLaurent:
        row = self.coeffs.get(Fraction(s), {})
        return TLaurent({j: Cyclotomic._raw(self.conductor, tuple(Fraction(c) for c in coords)) for j, coords in row.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, self.rho) for k in range(self.order * self.rho + 1)]

    def q0_constant(self) -> Cyclotomic:
        return self.coefficient(0).constant_term()

    def evaluate(self, z: complex, tau: complex) -> complex:
        """Numeric value of the genus itself (``zeta^(-n/2)`` restored)."""
        t = cmath.exp(2j * cmath.pi * z)
        total = 0j
        for s in self.coeffs:
            total += self.coefficient(s).evaluate(t) * cmath.exp(2j * cmath.pi * tau * float(s))
        return total * cmath.exp(2j * cmath.pi * float(self.sigma * self.zeta_shift))

    def text(self) -> str:
        lines = [f"# {self.kind} elliptic genus along v={self.v}, sigma={self.sigma}, xi = exp(2 pi i/{self.conductor})",
                 f"# coefficients of zeta^({-self.zeta_shift}) * genus, q-order {self.order}"]
        for s in self.exponents():
            lines.append(f"q^{s}: {self.coefficient(s)}")
        return "\n".join(lines)

    def machine(self) -> str:
        """Line-oriented schema, one nonzero coordinate per ``term`` line."""
        out = [
            "format mfgenus-series 1",
            f"fan {self.fingerprint}",
            f"kind {self.kind}",
            f"sigma {self.sigma.numerator}/{self.sigma.denominator}",
            f"level {self.level}",
            f"order {self.order}",
            f"rho {self.rho}",
            f"conductor {self.conductor}",
            f"zeta_shift {self.zeta_shift}",
            "v " + " ".join(map(str, self.v)),
        ]
        for s in sorted(self.coeffs):
            for j in sorted(self.coeffs[s]):
                for x, c in enumerate(self.coeffs[s][j]):
                    if c:
                        out.append(f"term {s} {j} {x} {c}")
        out.append(f"zero {'yes' if self.is_zero() else 'no'}")
        out.append("end")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# genus assembly


def _check_sigma(sigma, N: int | None, kind: str) -> tuple[Fraction, int]:
    if isinstance(sigma, float):
        raise TypeError("sigma must be an exact fraction")
    sigma = Fraction(sigma)
    if N is None:
        N = sigma.denominator
    if (sigma * N).denominator != 1:
        raise ValueError(f"sigma={sigma} is not of the form k/{N}")
    if kind == "breve" and not 0 < sigma < 1:
        raise ValueError("breve genus needs sigma = k/N with 0 < k < N")
    return sigma, N


def _prepare_v(fan: MultiFan, v) -> tuple[int, ...]:
    v = default_vector(fan) if v is None else tuple(int(x) for x in v)
    if not is_generic(fan, v):
        raise NotGeneric(f"{v} is not generic")
    return v


def _term_specs(fan: MultiFan, kind: str, v, sigma: Fraction, N: int, form: str):
    """Build the integer term list and the arithmetic setup."""
    cones = []
    for I in fan.maximal:
        dual = fan.dual(I)
        cones.append((I, dual, list(group_HI(fan, I)), fan.weights[I]))
    R = math.lcm(*(len(h) for _, _, h, _ in cones))

    pair_v = {(I, i): lat.pairing(u, v) for I, dual, _, _ in cones for i, u in dual.items()}
    tden = math.lcm(1, *(p.denominator for p in pair_v.values()))

    # (sector fractions, prefactor exponent of zeta) per term family
    families = []  # (I, {i: f_i}, zeta exponent as Fraction)
    if kind == "plain":
        for I, *_ in cones:
            families.append((I, {}, Fraction(0)))
    elif form == "regrouped":
        for d in twisted_sectors(fan):
            pre = d.total if kind == "orbifold" else Fraction(lat.breve(d.total, N))
            for I, *_ in cones:
                if d.K <= I:
                    families.append((I, d.fractions, pre))
    elif form == "direct":
        for I, dual, H, _ in cones:
            idx = sorted(I)
            for x in H:
                _, fr = reduced_element(fan.vectors(idx), idx, x)
                if kind == "orbifold":
                    pre = sum(fr.values(), Fraction(0))
                else:
                    pre = Fraction(sum(lat.breve(f, N) for f in fr.values()))
                families.append((I, {i: f for i, f in fr.items() if f}, pre))
    else:
        raise ValueError(f"unknown form {form!r}")

    rho = math.lcm(1, *(f.denominator for _, fr, _ in families for f in fr.values()))
    den_alpha = R
    m = math.lcm(sigma.denominator, den_alpha, *((sigma * pre).denominator for _, _, pre in families))

    info = {I: (dual, H, w) for I, dual, H, w in cones}
    specs = []
    for I, fr, pre in families:
        dual, H, w = info[I]
        mult = w * (R // len(H))
        if not mult:
            continue
        for h2 in H:
            factors = []
            for i in sorted(I):
                u = dual[i]
                a = -pair_v[(I, i)] * tden
                F = fr.get(i, Fraction(0)) * rho
                l = (-lat.pairing(u, h2) * m) % m
                assert a.denominator == 1 and F.denominator == 1 and Fraction(l).denominator == 1
                factors.append((int(a), int(F), int(l)))
            specs.append((mult, int(sigma * pre * m), tuple(factors)))
    return specs, R, tden, rho, m


def genus_series(
    fan: MultiFan,
    kind: str,
    sigma,
    order: int = 2,
    v: Sequence[int] | None = None,
    *,
    N: int | None = None,
    jobs: int | None = None,
    form: str = "regrouped",
) -> GenusQSeries:
    """q-expansion of the ``kind`` elliptic genus along ``v``.

    ``kind`` is ``plain``, ``orbifold`` or ``breve``. ``form`` selects the
    sector-regrouped sum (reduced representatives per ``K``) or the direct
    per-cone double sum; both must agree.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if order < 0:
        raise ValueError("order must be nonnegative")
    _require_complete(fan)
    sigma, N = _check_sigma(sigma, N, kind)
    if kind == "breve" and not coprime_to_groups(fan, N):
        raise lat.NotCoprime(f"N={N} shares a factor with some |H_I|")
    v = _prepare_v(fan, v)
    jobs = resolve_jobs(jobs)

    specs, R, tden, rho, m = _term_specs(fan, kind, v, sigma, N, form)
    st = _Setup(m=m, zx=int(sigma * m), rho=rho, top=order * rho)
    groups = _run_specs(specs, st, jobs)
    raw = _finalize(groups, m)

    coeffs = {}
    for q, row in sorted(raw.items()):
        out_row = {}
        for s, coords in sorted(row.items()):
            if s % tden:
                raise PolynomialityFailure(f"fractional t-exponent {Fraction(s, tden)} at q^{Fraction(q, rho)}")
            if any(c % R for c in coords):
                raise IntegralityFailure(f"non-integral coefficient at q^{Fraction(q, rho)} t^{s // tden}")
            out_row[s // tden] = tuple(c // R for c in coords)
        coeffs[Fraction(q, rho)] = out_row
    return GenusQSeries(kind, sigma, N, order, rho, m, fan.rank, v, fan.fingerprint, coeffs)


def elliptic_genus_along(fan, v=None, sigma=Fraction(1, 2), order=2, **kw) -> GenusQSeries:
    return genus_series(fan, "plain", sigma, order, v, **kw)


def orbifold_elliptic_genus_along(fan, v=None, sigma=Fraction(1, 2), order=2, **kw) -> GenusQSeries:
    return genus_series(fan, "orbifold", sigma, order, v, **kw)


def modified_orbifold_elliptic_genus_along(fan, v=None, sigma=Fraction(1, 2), order=2, **kw) -> GenusQSeries:
    return genus_series(fan, "breve", sigma, order, v, **kw)


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("MULTIFAN_JOBS", "")
        jobs = int(env) if env.strip() else 1
    if jobs < 1:
        raise ValueError("jobs must be positive")
    return jobs


def q0_bridge(series: GenusQSeries, fan: MultiFan) -> tuple[Cyclotomic, Cyclotomic]:
    """``(t^0 q^0 coefficient, matching T_y-type genus at -y = zeta)``."""
    lhs = series.q0_constant()
    if series.kind == "plain":
        rhs = ty_genus(fan).evaluate(series.sigma)
    elif series.kind == "orbifold":
        rhs = orbifold_ty(fan).evaluate(series.sigma)
    else:
        N = series.level
        k = series.sigma * N
        rhs = modified_orbifold_ty(fan, N).evaluate(int(k))
    return lhs, rhs


# ---------------------------------------------------------------------------
# numeric mode


@dataclass(frozen=True)
class ComplexPoint:
    z: complex
    tau: complex
    sigma: complex

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError("tau must lie in the upper half plane")


@dataclass(frozen=True)
class NumericValue:
    value: complex
    tail_bound: float


_POLE_EPS = 1e-12


def numeric_phi(p: ComplexPoint, truncation: int = 40) -> NumericValue:
    """Truncated product for ``phi(z, tau, sigma)`` with a geometric tail estimate."""
    z, tau, sigma = complex(p.z), complex(p.tau), complex(p.sigma)
    t = cmath.exp(2j * cmath.pi * z)
    q = cmath.exp(2j * cmath.pi * tau)
    zeta = cmath.exp(2j * cmath.pi * sigma)

    def den(x: complex) -> complex:
        if abs(x) < _POLE_EPS:
            raise PoleProximity(f"denominator factor {abs(x):.3e} near zero")
        return x

    val = cmath.exp(-1j * cmath.pi * sigma) * (1 - zeta * t) / den(1 - t)
    for k in range(1, truncation + 1):
        qk = q**k
        val *= (1 - zeta * t * qk) * (1 - qk / (zeta * t)) / (den(1 - t * qk) * den(1 - qk / t))
    aq = abs(q)
    c = max(abs(t), 1 / abs(t)) * (1 + max(abs(zeta), 1 / abs(zeta)))
    x = c * aq ** (truncation + 1) / (1 - aq)
    tail = abs(val) * (math.exp(4 * x) - 1) if x < 0.5 else math.inf
    return NumericValue(val, tail)


def check_modular_transformation(A: Sequence[Sequence[int]], p: ComplexPoint, truncation: int = 40) -> float:
    """``|phi(A(z, tau), sigma) - e^{pi i c(2 z sigma + (c tau + d) sigma^2)} phi(z, tau, (c tau + d) sigma)|``."""
    (a, b), (c, d) = A
    if a * d - b * c != 1:
        raise ValueError("A must lie in SL2(Z)")
    z, tau, sigma = complex(p.z), complex(p.tau), complex(p.sigma)
    j = c * tau + d
    lhs = numeric_phi(ComplexPoint(z / j, (a * tau + b) / j, sigma), truncation).value
    pref = cmath.exp(1j * cmath.pi * c * (2 * z * sigma + j * sigma**2))
    rhs = pref * numeric_phi(ComplexPoint(z, tau, j * sigma), truncation).value
    return abs(lhs - rhs)


def numeric_genus(fan: MultiFan, kind: str, v, z: complex, tau: complex, sigma, truncation: int = 40, N: int | None = None) -> complex:
    """Direct numeric double sum over cones with unreduced coset representatives."""
    sigma, N = _check_sigma(sigma, N, kind)
    s = float(sigma)
    total = 0j
    for I in fan.maximal:
        dual = fan.dual(I)
        H = list(group_HI(fan, I))
        w = fan.weights[I]
        firsts = [tuple([0] * fan.rank)] if kind == "plain" else H
        for h1 in firsts:
            for h2 in H:
                prod = 1 + 0j
                for i, u in dual.items():
                    g1 = lat.pairing(u, h1)
                    arg = -float(lat.pairing(u, v)) * z + float(g1) * tau - float(lat.pairing(u, h2))
                    if kind == "orbifold":
                        prod *= cmath.exp(2j * cmath.pi * s * float(g1))
                    elif kind == "breve":
                        prod *= cmath.exp(2j * cmath.pi * s * lat.breve(g1, N))
                    prod *= numeric_phi(ComplexPoint(arg, tau, s), truncation).value
                total += w / len(H) * prod
    return total
