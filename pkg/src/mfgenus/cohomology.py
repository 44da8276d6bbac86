"""Degree-two face ring classes, restriction to cones, and c_1 divisibility."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import lattice as lat
from .fan import MultiFan, from_cones, is_complete, NotComplete
from .lattice import RationalVector


@dataclass(frozen=True, eq=False)
class FaceRingClass:
    """``x = sum c_i x_i`` in ``H_T^2`` of a fan."""

    fan: MultiFan
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.fan.n_rays:
            raise ValueError("one coefficient per ray required")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other: "FaceRingClass") -> "FaceRingClass":
        return FaceRingClass(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FaceRingClass") -> "FaceRingClass":
        return FaceRingClass(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, k: int) -> "FaceRingClass":
        return FaceRingClass(self.fan, tuple(k * c for c in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FaceRingClass) and other.fan is self.fan and other.coeffs == self.coeffs

    __hash__ = None

    def __repr__(self):
        terms = [f"{c}*x{self.fan.labels[i]}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def ray_class(fan: MultiFan, i: int, c: int = 1) -> FaceRingClass:
    return FaceRingClass(fan, tuple(c if j == i else 0 for j in range(fan.n_rays)))


def first_chern_class(fan: MultiFan) -> FaceRingClass:
    """``c_1^T = sum x_i``."""
    return FaceRingClass(fan, (1,) * fan.n_rays)


def embed(fan: MultiFan, u: Sequence[int]) -> FaceRingClass:
    """``u = sum <u, v_i> x_i`` for an integral covector ``u``."""
    vals = [lat.pairing(u, v) for v in fan.rays]
    if any(x.denominator != 1 for x in vals):
        raise ValueError("u must pair integrally with every edge vector")
    return FaceRingClass(fan, tuple(int(x) for x in vals))


def restrict(x: FaceRingClass, I) -> RationalVector:
    """``iota_I^*(x) = sum_{i in I} c_i u_i^I``."""
    fan = x.fan
    I = frozenset(I)
    if I not in fan.weights and (len(I) != fan.rank or not fan.contains(I)):
        raise ValueError(f"{sorted(I)} is not a maximal simplex")
    out = [Fraction(0)] * fan.rank
    for i, u in fan.dual(I).items():
        c = x.coeffs[i]
        if c:
            out = [a + c * b for a, b in zip(out, u)]
    return tuple(out)


def is_T_Cartier(x: FaceRingClass) -> bool:
    return all(lat.is_integral(restrict(x, I)) for I in x.fan.maximal)


@dataclass(frozen=True)
class DivisibilityWitness:
    """Outcome of a divisibility test of ``c_1`` by ``N``.

    ``u`` satisfies ``<u, v_i> = 1 mod N`` for every ray when ``divisible``;
    ``x`` is the T-Cartier class with ``c_1^T = N x + u`` when
    ``t_cartier_divisible``.
    """

    N: int
    divisible: bool
    t_cartier_divisible: bool = False
    u: tuple[int, ...] | None = None
    x: FaceRingClass | None = None

    def __bool__(self):
        return self.divisible


def _congruence_solvable(rows: Sequence[Sequence[int]], rhs: Sequence[int], N: int) -> bool:
    """Decide ``A u = rhs (mod N)`` over ``u`` in ``Z^n``."""
    if not rows:
        return True
    n = len(rows[0])
    if n == 0:
        return all(b % N == 0 for b in rhs)
    snf = lat.smith_normal_form(rows)
    b = lat.mat_vec(snf.U, rhs)
    for j, bj in enumerate(b):
        d = snf.D[j][j] if j < n else 0
        if bj % math.gcd(d, N):
            return False
    return True


def solve_congruence(rows: Sequence[Sequence[int]], rhs: Sequence[int], N: int) -> tuple[int, ...] | None:
    """Lexicographically smallest ``u`` in ``[0, N)^n`` with ``A u = rhs mod N``.

    Coordinates are fixed one at a time, each time keeping the smallest
    value for which the remaining system stays solvable.
    """
    if not _congruence_solvable(rows, rhs, N):
        return None
    n = len(rows[0])
    fixed: list[int] = []
    for j in range(n):
        for val in range(N):
            trial = fixed + [val]
            sub_rows = [r[j + 1:] for r in rows]
            sub_rhs = [b - sum(c * t for c, t in zip(r[: j + 1], trial)) for r, b in zip(rows, rhs)]
            if j + 1 == n:
                ok = all(x % N == 0 for x in sub_rhs)
            else:
                ok = _congruence_solvable(sub_rows, sub_rhs, N)
            if ok:
                fixed = trial
                break
        else:  # pragma: no cover - solvability was established above
            raise AssertionError("lost solvability while fixing coordinates")
    return tuple(fixed)


def _check_level(fan: MultiFan, N: int) -> None:
    if N <= 1:
        raise ValueError("N must exceed 1")
    if not is_complete(fan):
        raise NotComplete(f"{fan!r} is not complete")


def divisibility(fan: MultiFan, N: int, *, check: bool = True) -> DivisibilityWitness:
    """Is ``c_1`` divisible by ``N``: some ``u`` with ``<u, v_i> = 1 mod N``."""
    if check:
        _check_level(fan, N)
    u = solve_congruence(fan.rays, [1] * fan.n_rays, N)
    if u is None:
        return DivisibilityWitness(N, False)
    t = t_cartier_divisibility(fan, N, check=False)
    return DivisibilityWitness(N, True, t.t_cartier_divisible, u, t.x)


def cone_chern_restrictions(fan: MultiFan) -> dict[frozenset, RationalVector]:
    """``u^I = iota_I^*(c_1^T)`` for every maximal ``I``."""
    c1 = first_chern_class(fan)
    return {I: restrict(c1, I) for I in fan.maximal}


def t_cartier_gcd(fan: MultiFan) -> int | None:
    """Largest N with c_1 T-Cartier divisible by N.

    Returns ``None`` if ``c_1^T`` is not T-Cartier, and ``0`` if all the
    ``u^I`` agree (then every N works).
    """
    us = list(cone_chern_restrictions(fan).values())
    if not all(lat.is_integral(u) for u in us):
        return None
    g = 0
    for u in us[1:]:
        for a, b in zip(u, us[0]):
            g = math.gcd(g, int(a - b))
    return g


def t_cartier_divisibility(fan: MultiFan, N: int, *, check: bool = True) -> DivisibilityWitness:
    """T-Cartier divisibility: ``c_1^T = N x + u`` with ``x`` T-Cartier.

    Holds iff every ``u^I`` is integral and all are congruent mod ``N L^*``;
    then ``u`` is ``u^{I_0}`` reduced into ``[0, N)^n`` and
    ``x = (c_1^T - u) / N``.
    """
    if check:
        _check_level(fan, N)
    g = t_cartier_gcd(fan)
    if g is None or g % N:
        plain = solve_congruence(fan.rays, [1] * fan.n_rays, N)
        return DivisibilityWitness(N, plain is not None, False, plain, None)
    u0 = cone_chern_restrictions(fan)[fan.maximal[0]]
    u = tuple(int(c) % N for c in u0)
    rest = first_chern_class(fan) - embed(fan, u)
    if any(c % N for c in rest.coeffs):
        raise AssertionError("c1 - u not divisible by N despite congruent restrictions")
    x = FaceRingClass(fan, tuple(c // N for c in rest.coeffs))
    return DivisibilityWitness(N, True, True, u, x)


@dataclass(frozen=True)
class C1ZeroWitness:
    zero: bool
    u: tuple[int, ...] | None = None

    def __bool__(self):
        return self.zero


def c1_is_zero(fan: MultiFan) -> C1ZeroWitness:
    """``c_1 = 0`` iff some integral ``u`` has ``<u, v_i> = 1`` for all rays."""
    rows = fan.rays
    n = fan.rank
    snf = lat.smith_normal_form(rows)
    b = lat.mat_vec(snf.U, [1] * fan.n_rays)
    y = []
    for j, bj in enumerate(b):
        d = snf.D[j][j] if j < n else 0
        if d == 0:
            if bj:
                return C1ZeroWitness(False)
            if j < n:
                y.append(0)
        elif bj % d:
            return C1ZeroWitness(False)
        else:
            y.append(bj // d)
    y += [0] * (n - len(y))
    u = lat.mat_vec(snf.V, y)
    assert all(lat.pairing(u, v) == 1 for v in rows)
    return C1ZeroWitness(True, tuple(int(c) for c in u))


def c1_zero_candidates(max_coord: int = 3) -> Iterator[MultiFan]:
    """Rank-two multi-fans whose rays all lie on the line ``x + y = 1``.

    For each ordered choice of four such rays the consecutive cones get
    weight ``+1`` and the outer cone weight ``-1``, which balances every
    codimension-one projection; complete candidates are yielded.
    """
    line = [(a, 1 - a) for a in range(-max_coord + 1, max_coord + 1)]
    # order by slope so consecutive rays bound adjacent cones
    line.sort(key=lambda v: -v[0])
    for chosen in itertools.combinations(line, 4):
        rays = list(chosen)
        cones = [{j, j + 1} for j in range(3)] + [{0, 3}]
        fan = from_cones(2, rays, cones, [1, 1, 1, -1], name="c1zero" + str(tuple(rays)))
        if is_complete(fan):
            yield fan


def search_c1_zero_fan(max_coord: int = 3) -> MultiFan:
    """First searched multi-fan with ``c_1 = 0`` (deterministic)."""
    for fan in c1_zero_candidates(max_coord):
        if c1_is_zero(fan):
            return fan
    raise LookupError("no c1 = 0 multi-fan in the search range")
