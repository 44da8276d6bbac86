"""Complete simplicial multi-fans with prescribed edge vectors.

A :class:`MultiFan` stores its maximal simplices (each of size ``rank``)
together with the two weight functions. Lower simplices are the subset
closure; cones are implicit in the edge vectors.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import lattice as lat
from .lattice import QuotientGroup, RationalVector


class NotGeneric(ValueError):
    """The vector lies on a linear span of a lower dimensional cone."""


class NotComplete(ValueError):
    pass


class NotASimplex(ValueError):
    pass


class InvalidFan(ValueError):
    pass


class InvalidWeights(ValueError):
    pass


class FanFormatError(ValueError):
    pass


Simplex = frozenset


@dataclass(frozen=True, eq=False)
class MultiFan:
    """A simplicial multi-fan ``(Sigma, C, w+, w-)`` with edge vectors.

    Parameters
    ----------
    rank : int
        Rank ``n`` of the lattice ``Z^n``.
    rays : sequence of integer vectors
        Edge vectors ``v_i``, indexed by position.
    cones : sequence of index sets
        The simplices of ``Sigma^(n)``; all other simplices are their faces
        together with the singletons of every ray.
    w_plus, w_minus : sequence of int
        Weights of the maximal simplices, aligned with ``cones``.
    labels : sequence of str, optional
        Ray names used for I/O; defaults to ``1..r``.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    cones: tuple[frozenset, ...]
    w_plus: tuple[int, ...]
    w_minus: tuple[int, ...]
    labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(c) for c in v) for v in self.rays))
        object.__setattr__(self, "cones", tuple(frozenset(int(i) for i in c) for c in self.cones))
        object.__setattr__(self, "w_plus", tuple(int(w) for w in self.w_plus))
        object.__setattr__(self, "w_minus", tuple(int(w) for w in self.w_minus))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(len(self.rays))))
        if len(self.w_plus) != len(self.cones) or len(self.w_minus) != len(self.cones):
            raise InvalidFan("weights must be aligned with cones")

    # -- combinatorics -----------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def weights(self) -> dict[frozenset, int]:
        w: dict[frozenset, int] = {}
        for c, p, m in zip(self.cones, self.w_plus, self.w_minus):
            w[c] = w.get(c, 0) + p - m
        return w

    def weight(self, I: Iterable[int]) -> int:
        return self.weights.get(frozenset(I), 0)

    @cached_property
    def maximal(self) -> tuple[frozenset, ...]:
        """Distinct members of ``Sigma^(n)`` in a deterministic order."""
        return tuple(sorted(set(self.cones), key=sorted))

    @cached_property
    def simplices(self) -> tuple[frozenset, ...]:
        """All of ``Sigma`` including the empty simplex, sorted by size."""
        out = {frozenset()}
        out.update(frozenset([i]) for i in range(self.n_rays))
        for c in self.cones:
            for k in range(len(c) + 1):
                out.update(frozenset(s) for s in itertools.combinations(sorted(c), k))
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))

    def skeleton(self, k: int) -> tuple[frozenset, ...]:
        """``Sigma^(k)``: simplices with ``k`` vertices."""
        return tuple(s for s in self.simplices if len(s) == k)

    def contains(self, K: Iterable[int]) -> bool:
        return frozenset(K) in self._simplex_set

    @cached_property
    def _simplex_set(self) -> frozenset:
        return frozenset(self.simplices)

    # -- cone data ---------------------------------------------------------

    def vectors(self, I: Iterable[int]) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in sorted(I)]

    @cached_property
    def _dual_cache(self) -> dict:
        return {}

    def dual(self, I: Iterable[int]) -> dict[int, RationalVector]:
        """``{i: u_i^I}`` for a maximal simplex ``I``."""
        I = frozenset(I)
        cache = self._dual_cache
        if I not in cache:
            idx = sorted(I)
            us = lat.dual_basis([self.rays[i] for i in idx])
            cache[I] = dict(zip(idx, us))
        return cache[I]

    def index(self, I: Iterable[int]) -> int:
        """``|H_I| = |det(v_i : i in I)|``."""
        return abs(lat.determinant(lat.columns(self.vectors(I)))) if self.rank else 1

    @property
    def primitive(self) -> bool:
        return all(math.gcd(*v) == 1 for v in self.rays)

    def is_nonsingular(self) -> bool:
        return all(self.index(I) == 1 for I in self.maximal)

    @cached_property
    def fingerprint(self) -> str:
        return hashlib.sha256(to_text(self).encode()).hexdigest()[:16]

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"<MultiFan{nm} rank={self.rank} rays={self.n_rays} cones={len(self.cones)}>"


@dataclass(frozen=True, eq=False)
class ProjectedFan(MultiFan):
    """``Delta_K`` in the quotient lattice ``L^K``.

    ``ray_map[j]`` is the parent index of projected ray ``j``; simplex
    ``J`` here corresponds to ``K | {ray_map[j] for j in J}`` in the parent.
    """

    parent: MultiFan | None = None
    K: frozenset = field(default_factory=frozenset)
    ray_map: tuple[int, ...] = ()
    chart: tuple = ()


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    problems: list[str]

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "valid" if self.valid else "invalid:\n" + "\n".join(f"  - {p}" for p in self.problems)


def validate(fan: MultiFan) -> ValidationReport:
    """List every violated multi-fan axiom."""
    problems = []
    n = fan.rank
    for i, v in enumerate(fan.rays):
        if len(v) != n:
            problems.append(f"ray {fan.labels[i]} has {len(v)} coordinates, expected {n}")
        elif not any(v):
            problems.append(f"ray {fan.labels[i]} is zero")
    if not fan.cones:
        problems.append("Sigma^(n) is empty")
    for c, wp, wm in zip(fan.cones, fan.w_plus, fan.w_minus):
        names = ",".join(fan.labels[i] for i in sorted(c) if 0 <= i < fan.n_rays)
        if any(i < 0 or i >= fan.n_rays for i in c):
            problems.append(f"cone {sorted(c)} references an unknown ray")
            continue
        if len(c) != n:
            problems.append(f"cone {{{names}}} has {len(c)} rays, expected {n}")
        if wp < 0 or wm < 0:
            problems.append(f"cone {{{names}}} has a negative weight")
    if len(set(fan.cones)) != len(fan.cones):
        problems.append("a maximal simplex is listed twice")
    if problems:
        return ValidationReport(problems)
    for s in fan.simplices:
        if len(s) > n:
            problems.append(f"simplex {sorted(s)} has more than {n} vertices")
        elif s and lat.rank(fan.vectors(s)) < len(s):
            problems.append(
                "edge vectors of {" + ",".join(fan.labels[i] for i in sorted(s)) + "} are dependent"
            )
    return ValidationReport(problems)


def _require_valid(fan: MultiFan) -> MultiFan:
    rep = validate(fan)
    if not rep:
        raise InvalidFan(str(rep))
    return fan


# ---------------------------------------------------------------------------
# generic vectors and degree


def is_generic(fan: MultiFan, v: Sequence) -> bool:
    """True unless ``v`` lies in the span of some simplex of size < n."""
    if len(v) != fan.rank:
        raise ValueError("dimension mismatch")
    if fan.rank == 0:
        return True
    if not any(v):
        return False
    for s in fan.simplices:
        if 0 < len(s) < fan.rank:
            if lat.rank(fan.vectors(s) + [tuple(v)]) <= len(s):
                return False
    return True


def candidate_vectors(n: int) -> Iterator[tuple[int, ...]]:
    """Deterministic sequence ``(±1, ±M, ..., ±M^(n-1))`` for M = 2, 3, ...

    The sign pattern cycles through the binary expansion of ``M - 2`` so
    that successive candidates point into different orthants.
    """
    if n == 0:
        yield ()
        return
    M = 2
    while True:
        bits = M - 2
        yield tuple((-1 if (bits >> j) & 1 else 1) * M**j for j in range(n))
        M += 1


def generic_vectors(fan: MultiFan, count: int | None = None) -> Iterator[tuple[int, ...]]:
    """Generic vectors from :func:`candidate_vectors`, skipping wall vectors."""
    found = 0
    for v in candidate_vectors(fan.rank):
        if is_generic(fan, v):
            yield v
            found += 1
            if count is not None and found >= count:
                return
        if fan.rank == 0:
            return


def default_vector(fan: MultiFan) -> tuple[int, ...]:
    return next(generic_vectors(fan))


def in_cone(fan: MultiFan, I: frozenset, v: Sequence) -> bool:
    """``v`` in the open cone of ``I`` (exact sign test on dual pairings)."""
    return all(lat.pairing(u, v) > 0 for u in fan.dual(I).values())


def on_boundary(fan: MultiFan, v: Sequence) -> bool:
    """``v`` lies in some closed maximal cone but not in its interior."""
    for I in fan.maximal:
        vals = [lat.pairing(u, v) for u in fan.dual(I).values()]
        if min(vals) == 0:
            return True
    return False


def degree_along(fan: MultiFan, v: Sequence) -> int:
    """``d_v``: total weight of maximal cones containing ``v``.

    ``v`` may lie on the span of a lower cone as long as it avoids every
    cone boundary, so that each membership test is decided strictly.
    """
    if len(v) != fan.rank:
        raise ValueError("dimension mismatch")
    if fan.rank == 0:
        return sum(fan.weights.values())
    if not any(v) or on_boundary(fan, v):
        raise NotGeneric(f"{tuple(v)} lies on a cone boundary of {fan!r}")
    return sum(w for I, w in fan.weights.items() if in_cone(fan, I, v))


# ---------------------------------------------------------------------------
# projection


def project(fan: MultiFan, K: Iterable[int]) -> MultiFan:
    """The projected multi-fan ``Delta_K`` (``fan`` itself when K is empty)."""
    K = frozenset(K)
    if not K:
        return fan
    if not fan.contains(K):
        raise NotASimplex(f"{sorted(K)} is not a simplex of {fan!r}")
    U, k = lat.quotient_chart(fan.vectors(K))
    links = sorted({j for I in fan.maximal if K <= I for j in I - K})
    pos = {j: p for p, j in enumerate(links)}
    rays = [lat.mat_vec(U, fan.rays[j])[k:] for j in links]
    cones, wp, wm = [], [], []
    for c, p, m in zip(fan.cones, fan.w_plus, fan.w_minus):
        if K <= c:
            cones.append(frozenset(pos[j] for j in c - K))
            wp.append(p)
            wm.append(m)
    return ProjectedFan(
        rank=fan.rank - k,
        rays=tuple(rays),
        cones=tuple(cones),
        w_plus=tuple(wp),
        w_minus=tuple(wm),
        labels=tuple(fan.labels[j] for j in links),
        name=f"{fan.name}/{{{','.join(fan.labels[i] for i in sorted(K))}}}",
        parent=fan,
        K=K,
        ray_map=tuple(links),
        chart=U,
    )


@dataclass
class CompletenessReport:
    complete: bool
    degree: int | None
    failures: list[str]

    def __bool__(self):
        return self.complete


def is_complete(fan: MultiFan, checks: int = 5) -> CompletenessReport:
    """Complete iff every codimension-one projection balances.

    For each ``J`` in ``Sigma^(n-1)`` the rank-one fan ``Delta_J`` must have
    equal degree along ``+1`` and ``-1``. The degree of ``fan`` is then
    evaluated along ``checks`` generic vectors, which must agree.
    """
    failures = []
    n = fan.rank
    if n == 0:
        return CompletenessReport(True, sum(fan.weights.values()), [])
    for J in fan.skeleton(n - 1):
        proj = project(fan, J)
        dp, dm = degree_along(proj, (1,)), degree_along(proj, (-1,))
        if dp != dm:
            names = ",".join(fan.labels[i] for i in sorted(J))
            failures.append(f"projection to {{{names}}} unbalanced: d+={dp}, d-={dm}")
    degrees = {degree_along(fan, v) for v in generic_vectors(fan, checks)}
    if len(degrees) != 1:
        failures.append(f"degree depends on the generic vector: {sorted(degrees)}")
    deg = degrees.pop() if len(degrees) == 1 else None
    return CompletenessReport(not failures, deg, failures)


def degree(fan: MultiFan) -> int:
    rep = is_complete(fan)
    if not rep.complete:
        raise NotComplete("; ".join(rep.failures))
    return rep.degree


def _require_complete(fan: MultiFan) -> None:
    rep = is_complete(fan)
    if not rep.complete:
        raise NotComplete(f"{fan!r} is not complete: " + "; ".join(rep.failures))


# ---------------------------------------------------------------------------
# groups and fractions


def group_HI(fan: MultiFan, I: Iterable[int]) -> QuotientGroup:
    """``H_I = L / L_{I,V}`` for ``I`` in ``Sigma^(n)``."""
    I = frozenset(I)
    if len(I) != fan.rank or not fan.contains(I):
        raise NotASimplex(f"{sorted(I)} is not a maximal simplex")
    return lat.quotient_group(fan.vectors(I))


def group_HK(fan: MultiFan, K: Iterable[int]) -> QuotientGroup:
    """``H_K = L_K / L_{K,V}`` with ``L_K`` the saturation of ``span(v_K)``."""
    K = frozenset(K)
    if not fan.contains(K):
        raise NotASimplex(f"{sorted(K)} is not a simplex")
    return lat.saturation_quotient(fan.vectors(K))


@dataclass(frozen=True)
class FractionData:
    """A group element ``h`` of ``H_K`` with its reduced representative.

    ``fractions[i] = f_{K,h,i}`` lies in ``[0, 1)``; ``total = f_{K,h}``.
    """

    K: frozenset
    rep: tuple[int, ...]
    fractions: dict
    total: Fraction

    @property
    def is_hat(self) -> bool:
        return all(f != 0 for f in self.fractions.values())


def reduced_element(vectors: Sequence[Sequence[int]], idx: Sequence[int], x: Sequence[int]):
    """Shift ``x`` by the lattice of ``vectors`` so all coordinates are in [0, 1).

    Returns ``(rep, {idx[j]: fraction_j})``.
    """
    coords = lat.solve(vectors, x)
    if coords is None:
        raise ValueError(f"{tuple(x)} is not in the span")
    shift = [math.floor(c) for c in coords]
    rep = tuple(xi - sum(s * v[r] for s, v in zip(shift, vectors)) for r, xi in enumerate(x))
    return rep, {i: c - s for i, c, s in zip(idx, coords, shift)}


def fraction_data(fan: MultiFan, K: Iterable[int]) -> list[FractionData]:
    """All of ``H_K`` with reduced representatives and fractions."""
    K = frozenset(K)
    if not K:
        return [FractionData(K, (0,) * fan.rank, {}, Fraction(0))]
    idx = sorted(K)
    vecs = fan.vectors(K)
    out = []
    for x in group_HK(fan, K):
        rep, fr = reduced_element(vecs, idx, x)
        out.append(FractionData(K, rep, fr, sum(fr.values(), Fraction(0))))
    return out


def hat_HK(fan: MultiFan, K: Iterable[int]) -> list[FractionData]:
    """``hat H_K``: elements of ``H_K`` whose fractions are all nonzero.

    For ``K`` empty the single trivial element is returned.
    """
    K = frozenset(K)
    data = fraction_data(fan, K)
    if not K:
        return data
    return [d for d in data if d.is_hat]


def twisted_sectors(fan: MultiFan) -> list[FractionData]:
    """Every ``(K, h)`` with ``h`` in ``hat H_K``, including ``K`` empty."""
    out = []
    for K in fan.simplices:
        out.extend(hat_HK(fan, K))
    return out


# ---------------------------------------------------------------------------
# h- and e-vectors


def mu(fan: MultiFan, I: frozenset, v: Sequence) -> int:
    return sum(1 for u in fan.dual(I).values() if lat.pairing(u, v) > 0)


def _h_vector_at(fan: MultiFan, v) -> tuple[int, ...]:
    h = [0] * (fan.rank + 1)
    for I, w in fan.weights.items():
        h[mu(fan, I, v)] += w
    return tuple(h)


def h_vector(fan: MultiFan, *, check: bool = True) -> tuple[int, ...]:
    """``h_k = sum of w(I) over I with mu(I) = k`` along a generic vector.

    With ``check`` the fan must be complete and the result is recomputed
    at two further generic vectors; disagreement raises ``NotComplete``.
    """
    if check:
        _require_complete(fan)
    vs = list(generic_vectors(fan, 3 if check else 1))
    hs = {_h_vector_at(fan, v) for v in vs}
    if len(hs) != 1:
        raise NotComplete(f"h-vector depends on the generic vector: {sorted(hs)}")
    return hs.pop()


def e_vector(fan: MultiFan, *, check: bool = True) -> tuple[int, ...]:
    """``e_k = sum over J in Sigma^(k) of deg(Delta_J)``."""
    if check:
        _require_complete(fan)
    e = []
    for k in range(fan.rank + 1):
        total = 0
        for J in fan.skeleton(k):
            proj = project(fan, J)
            total += degree_along(proj, default_vector(proj))
        e.append(total)
    return tuple(e)


# ---------------------------------------------------------------------------
# builders


def _fan(rank, rays, cones, weights=None, name="") -> MultiFan:
    weights = [1] * len(cones) if weights is None else list(weights)
    return _require_valid(
        MultiFan(
            rank=rank,
            rays=tuple(rays),
            cones=tuple(frozenset(c) for c in cones),
            w_plus=tuple(max(w, 0) for w in weights),
            w_minus=tuple(max(-w, 0) for w in weights),
            name=name,
        )
    )


def projective_fan(n: int) -> MultiFan:
    """Fan of ``P^n``: rays ``e_1..e_n`` and ``-(e_1+...+e_n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = [set(range(n + 1)) - {i} for i in range(n + 1)]
    return _fan(n, rays, cones, name=f"P{n}")


def weighted_projective_fan(*a: int) -> MultiFan:
    """Fan of ``P(a_1, ..., a_{n+1})``; the rays satisfy ``sum a_i v_i = 0``.

    When ``a_{n+1} = 1`` the rays are ``v_i = e_i`` for ``i <= n`` and
    ``v_{n+1} = -sum a_i e_i``; otherwise the lattice ``Z^{n+1} / Z a`` is
    charted by a Smith transform.
    """
    if len(a) == 1 and isinstance(a[0], (tuple, list)):
        a = tuple(a[0])
    if len(a) < 2 or any(x <= 0 for x in a):
        raise InvalidWeights(f"weights must be >= 2 positive integers, got {a}")
    if math.gcd(*a) != 1:
        raise InvalidWeights(f"gcd of weights {a} must be 1")
    n = len(a) - 1
    if a[-1] == 1:
        rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        rays.append(tuple(-x for x in a[:-1]))
    else:
        U, _ = lat.quotient_chart([a])
        rays = [lat.mat_vec(U, tuple(int(i == j) for j in range(n + 1)))[1:] for i in range(n + 1)]
    cones = [set(range(n + 1)) - {i} for i in range(n + 1)]
    return _fan(n, rays, cones, name="P(" + ",".join(map(str, a)) + ")")


def weighted_projective_2211(n: int) -> MultiFan:
    """``P^n(2, ..., 2, 1, 1)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return weighted_projective_fan(*([2] * (n - 1) + [1, 1]))


def _triangle(rays, name) -> MultiFan:
    return _fan(2, rays, [{0, 1}, {1, 2}, {0, 2}], name=name)


def example_fan_1(b: int) -> MultiFan:
    """Rays ``e1, e2, -e1 - b e2`` with primitive edge vectors."""
    if b <= 0:
        raise ValueError("b must be positive")
    return _triangle([(1, 0), (0, 1), (-1, -b)], f"example1(b={b})")


def example_fan_2(b: int) -> MultiFan:
    """Cones of :func:`example_fan_1` with edge vectors ``e1, b e2, -e1 - b e2``."""
    if b <= 0:
        raise ValueError("b must be positive")
    return _triangle([(1, 0), (0, b), (-1, -b)], f"example2(b={b})")


def product_fan(f1: MultiFan, f2: MultiFan) -> MultiFan:
    """The product fan; cones are unions of cones, weights multiply."""
    n1, n2 = f1.rank, f2.rank
    rays = [tuple(v) + (0,) * n2 for v in f1.rays] + [(0,) * n1 + tuple(v) for v in f2.rays]
    cones, weights = [], []
    for I, w1 in f1.weights.items():
        for J, w2 in f2.weights.items():
            cones.append(set(I) | {j + f1.n_rays for j in J})
            weights.append(w1 * w2)
    return _fan(n1 + n2, rays, cones, weights, name=f"{f1.name}x{f2.name}")


def hirzebruch_fan(a: int) -> MultiFan:
    """Hirzebruch surface ``F_a``: rays ``e1, e2, -e1 + a e2, -e2``."""
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return _fan(2, rays, [{0, 1}, {1, 2}, {2, 3}, {3, 0}], name=f"F{a}")


def bundle_fan(n: int, k: Sequence[int]) -> MultiFan:
    """``P^{n-1}``-bundle over ``P^1`` with twists ``(0, k_2, ..., k_n)``.

    Rays ``v_0 = e_1``, ``v_1..v_n`` the ``P^{n-1}`` fan in the last
    ``n - 1`` coordinates, and ``v_{n+1} = -e_1 - sum k_i v_i``. These satisfy
    ``v_0 + v_{n+1} + sum_{i>=2} k_i v_i = 0`` and ``v_1 + ... + v_n = 0``.
    """
    k = list(k)
    if len(k) != n - 1:
        raise ValueError("need twists k_2..k_n")
    fib = projective_fan(n - 1)
    fiber = [(0,) + v for v in fib.rays]  # v_1..v_n, index 1..n
    v0 = (1,) + (0,) * (n - 1)
    vlast = tuple(
        -v0[c] - sum(ki * fiber[i + 1][c] for i, ki in enumerate(k)) for c in range(n)
    )
    rays = [v0] + fiber + [vlast]
    cones = []
    for base in (0, n + 1):
        for F in fib.maximal:
            cones.append({base} | {i + 1 for i in F})
    return _fan(n, rays, cones, name=f"bundle(n={n},k={tuple(k)})")


def scaled_weights(fan: MultiFan, factor: int) -> MultiFan:
    return MultiFan(
        fan.rank,
        fan.rays,
        fan.cones,
        tuple(factor * w for w in fan.w_plus),
        tuple(factor * w for w in fan.w_minus),
        fan.labels,
        name=f"{fan.name}*{factor}",
    )


def from_cones(rank, rays, cones, weights=None, name="") -> MultiFan:
    """Build and validate a multi-fan; negative weights go to ``w-``."""
    return _fan(rank, rays, cones, weights, name)


# ---------------------------------------------------------------------------
# text format


def parse(text: str, name: str = "") -> MultiFan:
    """Parse the line-oriented fan format.

    ::

        rank 1
        ray 1 1
        ray 2 -1
        cone 1 w+ 1 w- 0
        cone 2 w+ 1 w- 0
    """
    rank = None
    labels: list[str] = []
    rays: list[tuple[int, ...]] = []
    cones, wp, wm = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "rank":
                if rank is not None or len(tok) != 2:
                    raise FanFormatError("bad rank line")
                rank = int(tok[1])
                if rank < 0:
                    raise FanFormatError("rank must be nonnegative")
            elif tok[0] == "ray":
                if rank is None:
                    raise FanFormatError("ray before rank")
                if len(tok) != 2 + rank:
                    raise FanFormatError(f"ray needs an id and {rank} coordinates")
                if tok[1] in labels:
                    raise FanFormatError(f"duplicate ray id {tok[1]}")
                labels.append(tok[1])
                rays.append(tuple(int(x) for x in tok[2:]))
            elif tok[0] == "cone":
                if "w+" not in tok or "w-" not in tok:
                    raise FanFormatError("cone needs w+ and w-")
                ip, im = tok.index("w+"), tok.index("w-")
                if im != ip + 2 or len(tok) != im + 2:
                    raise FanFormatError("expected 'cone <ids> w+ <int> w- <int>'")
                ids = tok[1:ip]
                unknown = [i for i in ids if i not in labels]
                if unknown:
                    raise FanFormatError(f"unknown ray ids {unknown}")
                cones.append(frozenset(labels.index(i) for i in ids))
                wp.append(int(tok[ip + 1]))
                wm.append(int(tok[im + 1]))
            else:
                raise FanFormatError(f"unknown keyword {tok[0]!r}")
        except FanFormatError as exc:
            raise FanFormatError(f"line {lineno}: {exc}") from None
        except ValueError:
            raise FanFormatError(f"line {lineno}: expected integers in {line!r}") from None
    if rank is None:
        raise FanFormatError("missing rank line")
    return MultiFan(rank, tuple(rays), tuple(cones), tuple(wp), tuple(wm), tuple(labels), name)


def from_file(path) -> MultiFan:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), name=path.stem)


def to_text(fan: MultiFan) -> str:
    lines = [f"rank {fan.rank}"]
    for lab, v in zip(fan.labels, fan.rays):
        lines.append(" ".join(["ray", lab, *map(str, v)]))
    for c, p, m in zip(fan.cones, fan.w_plus, fan.w_minus):
        ids = " ".join(fan.labels[i] for i in sorted(c))
        lines.append(f"cone {ids} w+ {p} w- {m}".replace("cone  ", "cone "))
    return "\n".join(lines) + "\n"
