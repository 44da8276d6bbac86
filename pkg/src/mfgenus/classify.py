"""Recognition of the extremal divisibility families among Todd-one multi-fans.

Fans with Todd genus one and all weights one have ``c_1`` T-Cartier
divisible by at most ``n + 1``. At ``n + 1`` the fan looks like projective
space; at ``n`` it is either a nonsingular projective-bundle type fan
(``h_(n-1) = 2``) or the weighted projective space ``P(2,...,2,1,1)``
(``h_(n-1) = 1``). Each branch is recognised by checking its
characterising identities exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice as lat
from .cohomology import FaceRingClass, is_T_Cartier, ray_class, t_cartier_gcd
from .fan import MultiFan, _require_complete, group_HI, h_vector, hat_HK, project
from .genera import FracExpPoly, PreconditionUnmet, orbifold_ty, ty_genus

PROJECTIVE = "ProjectiveSpaceLike"
CASE_A = "CaseA_Bundle"
CASE_B = "CaseB_WeightedProjective"
OTHER = "Other"


class ContradictsPaper(AssertionError):
    """Hypotheses of a structure statement hold but one of its identities fails."""


def check_toddone(fan: MultiFan, *, projections: bool = False) -> bool:
    """``h_0 = 1`` and ``w(I) = 1`` for every maximal ``I``.

    With ``projections`` also require ``h_0(Delta_K) = 1`` for every simplex.
    """
    _require_complete(fan)
    ok = h_vector(fan)[0] == 1 and all(w == 1 for w in fan.weights.values())
    if ok and projections:
        ok = all(h_vector(project(fan, K), check=False)[0] == 1 for K in fan.simplices)
    return ok


def _max_plain_divisor(fan: MultiFan) -> int | None:
    """Largest N with ``<u, v_i> = 1 mod N`` solvable; ``None`` if every N works."""
    snf = lat.smith_normal_form(fan.rays)
    b = lat.mat_vec(snf.U, [1] * fan.n_rays)
    r = snf.rank
    g = 0
    for bj in b[r:]:
        g = math.gcd(g, bj)
    torsion = [(snf.D[j][j], b[j]) for j in range(r) if snf.D[j][j] > 1]

    def ok(N: int) -> bool:
        return all(bj % math.gcd(N, d) == 0 for d, bj in torsion)

    if g == 0:
        if all(bj % d == 0 for d, bj in torsion):
            return None
        return max(N for N in range(1, math.prod(d for d, _ in torsion) + 1) if ok(N))
    return max(N for N in range(1, g + 1) if g % N == 0 and ok(N))


def max_divisibility(fan: MultiFan) -> tuple[int | None, int | None]:
    """``(N_plain, N_T)``: largest N dividing ``c_1``, plainly and T-Cartier.

    A value of 1 means no ``N > 1`` works; ``None`` means every ``N`` does.
    """
    if not check_toddone(fan):
        raise PreconditionUnmet("Todd genus one with unit weights is required")
    n = fan.rank
    g = t_cartier_gcd(fan)
    n_t = 1 if g is None else (None if g == 0 else g)
    if n_t is None or n_t > n + 1:
        raise ContradictsPaper(f"c1 T-Cartier divisible by {n_t or 'every N'} > n + 1 = {n + 1}")
    return _max_plain_divisor(fan), n_t


def relation_kernel(fan: MultiFan) -> list[tuple[int, ...]]:
    """Integer basis of ``{a : sum a_i v_i = 0}``."""
    snf = lat.smith_normal_form(lat.columns(fan.rays))
    V = snf.V
    return [tuple(V[i][j] for i in range(fan.n_rays)) for j in range(snf.rank, fan.n_rays)]


def _cyclotomic_sum(k: int) -> FracExpPoly:
    return FracExpPoly.from_coefficients([1] * k)


def _one_minus_y_times_sum(k: int) -> FracExpPoly:
    # 1 - y = 1 + w
    return FracExpPoly.from_coefficients([1, 1]) * _cyclotomic_sum(k)


@dataclass
class BranchCheck:
    holds: bool
    failures: list[str] = field(default_factory=list)
    evidence: dict = field(default_factory=dict)


def _nonsingular(fan: MultiFan) -> bool:
    return all(group_HI(fan, I).order == 1 for I in fan.maximal)


def verify_projective(fan: MultiFan) -> BranchCheck:
    n = fan.rank
    fails, ev = [], {}
    if not _nonsingular(fan):
        fails.append("fan is singular")
    ty = ty_genus(fan)
    if ty != _cyclotomic_sum(n + 1):
        fails.append(f"T_y = {ty}")
    if fan.n_rays == n + 1:
        s = tuple(sum(v[j] for v in fan.rays) for j in range(n))
        ev["ray_sum"] = s
        if any(s):
            fails.append(f"sum of rays is {s}, not 0")
    return BranchCheck(not fails, fails, ev)


def verify_case_a(fan: MultiFan) -> BranchCheck:
    """Nonsingular, ``T_y = (1-y) sum_{k<n} (-y)^k`` and ``n + 2`` rays."""
    n = fan.rank
    fails = []
    if not _nonsingular(fan):
        fails.append("fan is singular")
    ty = ty_genus(fan)
    if ty != _one_minus_y_times_sum(n):
        fails.append(f"T_y = {ty}")
    if fan.n_rays != n + 2:
        fails.append(f"{fan.n_rays} rays, expected {n + 2}")
    return BranchCheck(not fails, fails, {"relations": relation_kernel(fan)})


def verify_case_b(fan: MultiFan) -> BranchCheck:
    """Weighted projective ``P(2,...,2,1,1)`` identities."""
    n = fan.rank
    fails: list[str] = []
    ev: dict = {}
    sectors = {K: hat_HK(fan, K) for K in fan.simplices if K}
    twisted = [K for K, hs in sectors.items() if hs]
    ev["twisted_K"] = [sorted(K) for K in twisted]
    if len(twisted) != 1:
        fails.append(f"{len(twisted)} simplices with nonempty hat H_K, expected 1")
    if fan.n_rays != n + 1:
        fails.append(f"{fan.n_rays} rays, expected {n + 1}")
        return BranchCheck(False, fails, ev)

    ker = relation_kernel(fan)
    if len(ker) != 1:
        fails.append("ray relation space is not one dimensional")
        return BranchCheck(False, fails, ev)
    a = ker[0]
    if sum(a) < 0:
        a = tuple(-x for x in a)
    ev["relation"] = a
    if sorted(a, reverse=True) != [2] * (n - 1) + [1, 1]:
        fails.append(f"relation {a} is not a permutation of (2,...,2,1,1)")
    if sum(a) != 2 * n:
        fails.append(f"sum of relation coefficients {sum(a)} != 2n")

    allrays = frozenset(range(fan.n_rays))
    orders = []
    for i in range(fan.n_rays):
        I = allrays - {i}
        if I not in fan.weights:
            fails.append(f"cone omitting ray {i} missing")
            continue
        orders.append(group_HI(fan, I).order)
        if orders[-1] != abs(a[i]):
            fails.append(f"|H_(omit {i})| = {orders[-1]} but a_{i} = {a[i]}")
    ev["H_omit"] = tuple(orders)

    if len(twisted) == 1:
        K = twisted[0]
        hs = sectors[K]
        ev["f_K"] = [str(d.total) for d in hs]
        if len(hs) != 1 or hs[0].total != 1:
            fails.append(f"f_(K,h) = {[str(d.total) for d in hs]}, expected [1]")
        tk = FracExpPoly.from_coefficients(h_vector(project(fan, K), check=False))
        ev["T_y(Delta_K)"] = str(tk)
        if tk != _cyclotomic_sum(n - 1):
            fails.append(f"T_y(Delta_K) = {tk}")
        for j in sorted(K):
            if not is_T_Cartier(ray_class(fan, j, 2)):
                fails.append(f"2 x_{fan.labels[j]} is not T-Cartier")

    hat = orbifold_ty(fan)
    ev["orbifold T_y"] = str(hat)
    if hat != _one_minus_y_times_sum(n):
        fails.append(f"orbifold T_y = {hat}")

    lhs = sum(orders)
    mid = sum((n + 1 - len(K)) * len(hat_HK(fan, K)) for K in fan.simplices)
    rhs = sum(group_HI(fan, I).order for I in fan.maximal)
    ev["ledger"] = (lhs, mid, rhs)
    if not lhs == mid == rhs:
        fails.append(f"group order ledger {lhs}, {mid}, {rhs} disagree")
    return BranchCheck(not fails, fails, ev)


@dataclass
class ClassificationReport:
    satisfies_toddone: bool
    max_plain_N: int | None
    max_T_cartier_N: int | None
    family: str
    h_vector: tuple[int, ...]
    ty: FracExpPoly
    orbifold_ty: FracExpPoly
    evidence: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [
            f"toddone {'yes' if self.satisfies_toddone else 'no'}",
            f"max_plain_N {self.max_plain_N if self.max_plain_N is not None else 'unbounded'}",
            f"max_T_cartier_N {self.max_T_cartier_N if self.max_T_cartier_N is not None else 'unbounded'}",
            f"family {self.family}",
            "h_vector " + " ".join(map(str, self.h_vector)),
            f"T_y {self.ty}",
            f"orbifold_T_y {self.orbifold_ty}",
        ]
        for k in sorted(self.evidence):
            out.append(f"evidence {k} {self.evidence[k]}")
        return out


def classify_extremal(fan: MultiFan) -> ClassificationReport:
    """Place a Todd-one multi-fan into the extremal divisibility families."""
    if not fan.primitive:
        raise PreconditionUnmet("edge vectors must be primitive")
    if not check_toddone(fan):
        raise PreconditionUnmet("Todd genus one with unit weights is required")
    n = fan.rank
    n_plain, n_t = max_divisibility(fan)
    h = h_vector(fan)
    report = ClassificationReport(True, n_plain, n_t, OTHER, h, ty_genus(fan), orbifold_ty(fan))

    if n_t == n + 1:
        check = verify_projective(fan)
        family = PROJECTIVE
    elif n_t == n and n >= 2:
        if h[n - 1] == 2:
            check, family = verify_case_a(fan), CASE_A
        elif h[n - 1] == 1:
            check, family = verify_case_b(fan), CASE_B
        else:
            raise ContradictsPaper(f"h_(n-1) = {h[n - 1]}, expected 1 or 2")
    else:
        return report
    if not check.holds:
        raise ContradictsPaper(f"{family}: " + "; ".join(check.failures))
    report.family = family
    report.evidence = check.evidence
    return report
