"""Exact integer lattice linear algebra.

Matrices are tuples of row tuples of Python ints, so arithmetic never
overflows. Rational vectors are tuples of :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .cyclotomic import Cyclotomic

IntMatrix = tuple[tuple[int, ...], ...]
RationalVector = tuple[Fraction, ...]


class SingularInput(ValueError):
    """Vectors expected to be linearly independent are not."""


class NotCoprime(ValueError):
    """A denominator (or group order) shares a factor with the level N."""


# ---------------------------------------------------------------------------
# small matrix helpers


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if not m or not m[0]:
        raise ValueError("matrix must have at least one row and one column")
    if any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def columns(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix whose columns are ``vectors``."""
    return as_matrix(zip(*vectors))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def pairing(u: Sequence, v: Sequence):
    """The dual pairing <u, v>."""
    if len(u) != len(v):
        raise ValueError("dimension mismatch in pairing")
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def _row_reduce(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q of a list of vectors (rows)."""
    if not vectors or not vectors[0]:
        return 0
    return len(_row_reduce(vectors)[1])


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m: Sequence[Sequence]) -> tuple[RationalVector, ...]:
    """Exact rational inverse of a square matrix."""
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = _row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise SingularInput("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def solve(vectors: Sequence[Sequence[int]], target: Sequence) -> RationalVector | None:
    """Coefficients c with sum c_j vectors[j] = target, or None if no solution.

    ``vectors`` must be linearly independent.
    """
    k = len(vectors)
    aug = [[Fraction(v[i]) for v in vectors] + [Fraction(target[i])] for i in range(len(target))]
    red, piv = _row_reduce(aug)
    if k in piv:
        return None
    if len(piv) < k:
        raise SingularInput("vectors are linearly dependent")
    return tuple(red[i][k] for i in range(k))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with unimodular ``U``, ``V`` and diagonal ``D``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariants(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.D[0]))
        return tuple(self.D[i][i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d != 0)


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with transforms.

    The diagonal entries are nonnegative and satisfy ``d1 | d2 | ...``,
    with zeros last.
    """
    a = [list(map(int, row)) for row in as_matrix(M)]
    rows, cols = len(a), len(a[0])
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(t, i, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(t, j, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: pivot must divide every remaining entry
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(
        tuple(map(tuple, U)), tuple(map(tuple, a)), tuple(map(tuple, V))
    )


# ---------------------------------------------------------------------------
# dual bases and quotient groups


def dual_basis(vectors: Sequence[Sequence[int]]) -> tuple[RationalVector, ...]:
    """Covectors ``u_i`` with ``<u_i, v_j> = delta_ij``.

    Raises
    ------
    SingularInput
        If the vectors are dependent or their count differs from the rank.
    """
    n = len(vectors)
    if n == 0:
        return ()
    if any(len(v) != n for v in vectors):
        raise SingularInput("need exactly as many vectors as the ambient rank")
    # rows of B^{-1} where B has the v_j as columns
    return inverse(columns(vectors))


def span_dual_basis(vectors: Sequence[Sequence[int]]) -> tuple[RationalVector, ...]:
    """Dual basis of the span of ``vectors`` (possibly of lower rank).

    The returned covectors live in the ambient dual and vanish on a fixed
    complement of the span, so ``<u_i, x>`` gives the coordinates of any
    ``x`` lying in the span.
    """
    k = len(vectors)
    if k == 0:
        return ()
    if rank(vectors) < k:
        raise SingularInput("vectors are linearly dependent")
    n = len(vectors[0])
    basis = [tuple(v) for v in vectors]
    for e in identity(n):
        if len(basis) == n:
            break
        if rank(basis + [e]) > len(basis):
            basis.append(e)
    return dual_basis(basis)[:k]


@dataclass(frozen=True)
class QuotientGroup:
    """A finite quotient ``S / L'`` where ``L'`` is spanned by ``basis``.

    ``S`` is the ambient lattice when ``basis`` has full rank, otherwise the
    saturation of the span of ``basis``. Elements are enumerated as integer
    vectors in the ambient lattice via the Smith chart.
    """

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]  # generating vectors (columns of the sublattice)
    factors: tuple[int, ...]
    _U: IntMatrix
    _Uinv: IntMatrix

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def __len__(self) -> int:
        return self.order

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        """Smith coordinates of ``x`` reduced mod the invariant factors."""
        y = mat_vec(self._U, x)
        k = len(self.factors)
        if any(y[k:]):
            raise ValueError(f"{tuple(x)} is not in the saturated lattice")
        return tuple(yi % d for yi, d in zip(y[:k], self.factors))

    def _lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        y = list(coords) + [0] * (self.ambient_rank - len(coords))
        return mat_vec(self._Uinv, y)

    def canonical(self, x: Sequence[int]) -> tuple[int, ...]:
        """The enumerated representative of the coset of ``x``."""
        return self._lift(self.coordinates(x))

    def equivalent(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.coordinates(x) == self.coordinates(y)

    @property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for coords in itertools.product(*(range(d) for d in self.factors)):
            yield self._lift(coords)


def _quotient(vectors: Sequence[Sequence[int]], *, require_full: bool) -> QuotientGroup:
    vecs = [tuple(map(int, v)) for v in vectors]
    if not vecs:
        raise SingularInput("empty basis")
    n, k = len(vecs[0]), len(vecs)
    if require_full and k != n:
        raise SingularInput("quotient_group needs a full-rank square basis")
    snf = smith_normal_form(columns(vecs))
    if snf.rank < k:
        raise SingularInput("basis vectors are linearly dependent")
    uinv = inverse(snf.U)
    uinv_int = tuple(tuple(int(x) for x in row) for row in uinv)
    return QuotientGroup(n, tuple(vecs), snf.invariants, snf.U, uinv_int)


def quotient_group(basis: Sequence[Sequence[int]]) -> QuotientGroup:
    """``Z^n / L'`` for a full-rank sublattice spanned by ``basis`` (n vectors)."""
    return _quotient(basis, require_full=True)


def saturation_quotient(basis: Sequence[Sequence[int]]) -> QuotientGroup:
    """``sat(L') / L'`` where ``sat`` is the saturation of ``span(basis)``."""
    return _quotient(basis, require_full=False)


def quotient_chart(basis: Sequence[Sequence[int]]) -> tuple[IntMatrix, int]:
    """Unimodular ``U`` mapping ``sat(span(basis))`` onto the first k coordinates.

    The projection to ``Z^n / sat`` is ``x -> (U x)[k:]``.
    """
    vecs = [tuple(map(int, v)) for v in basis]
    snf = smith_normal_form(columns(vecs))
    if snf.rank < len(vecs):
        raise SingularInput("basis vectors are linearly dependent")
    return snf.U, len(vecs)


# ---------------------------------------------------------------------------
# characters and the breve operator


def character(u: Sequence, rep: Sequence[int]) -> Cyclotomic:
    """``exp(2 pi i <u, rep>)`` as an exact root of unity."""
    return Cyclotomic.exp2pi(pairing(u, rep))


def breve(f, N: int) -> int:
    """``d * s mod N`` for ``f = s/r`` in lowest terms with ``d r = 1 mod N``."""
    if N <= 1:
        raise ValueError("N must exceed 1")
    f = Fraction(f)
    s, r = f.numerator, f.denominator
    if math.gcd(r, N) != 1:
        raise NotCoprime(f"denominator {r} of {f} is not prime to N={N}")
    return (pow(r, -1, N) * s) % N


def is_integral(u: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in u)
