import math
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from mfgenus import lattice as lat
from mfgenus.cyclotomic import Cyclotomic


def test_snf_identity():
    s = lat.smith_normal_form([[1, 0], [0, 1]])
    assert s.invariants == (1, 1)


def test_snf_example3_columns():
    # columns (1,0) and (-1,-2)
    s = lat.smith_normal_form([[1, -1], [0, -2]])
    assert s.invariants == (1, 2)


def test_snf_diagonal():
    assert lat.smith_normal_form([[2, 0], [0, 2]]).invariants == (2, 2)


def test_snf_factorisation_holds():
    M = [[4, 6, 2], [2, 8, 0], [0, 2, 10]]
    s = lat.smith_normal_form(M)
    UMV = lat.mat_mul(lat.mat_mul(s.U, M), s.V)
    assert [tuple(r) for r in UMV] == [tuple(r) for r in s.D]
    inv = s.invariants
    assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1) if inv[i])


def test_dual_basis_examples():
    assert lat.dual_basis([(1, 0), (0, 1)]) == ((1, 0), (0, 1))
    u1, u3 = lat.dual_basis([(1, 0), (-1, -2)])
    # u1 must kill (-1, -2), so its second coordinate is -1/2
    assert u1 == (1, Fr(-1, 2)) and u3 == (0, Fr(-1, 2))
    u2, u3 = lat.dual_basis([(0, 1), (-1, -2)])
    assert u2 == (-2, 1)
    assert lat.pairing(u2, (0, 1)) == 1 and lat.pairing(u2, (-1, -2)) == 0


def test_dual_basis_singular():
    with pytest.raises(lat.SingularInput):
        lat.dual_basis([(1, 2), (2, 4)])


def test_quotient_examples():
    assert lat.quotient_group([(1, 0), (0, 1)]).order == 1
    g = lat.quotient_group([(1, 0), (-1, -2)])
    assert g.order == 2
    assert g.equivalent((0, 1), (0, -1))
    assert not g.equivalent((0, 0), (0, 1))


def test_quotient_singular():
    with pytest.raises(lat.SingularInput):
        lat.quotient_group([(1, 1), (2, 2)])


def test_saturation_quotient_weighted_projective():
    # v_n, v_{n+1} of P^3(2,2,1,1) span a rank-two sublattice of index two in its saturation
    from mfgenus.fan import weighted_projective_2211

    fan = weighted_projective_2211(3)
    g = lat.saturation_quotient([fan.rays[2], fan.rays[3]])
    assert g.order == 2
    (h,) = [x for x in g if any(x)]
    half = tuple(Fr(a + b, 2) for a, b in zip(fan.rays[2], fan.rays[3]))
    assert g.equivalent(h, tuple(int(c) for c in half))


def test_character_examples():
    assert Cyclotomic.rational(1) == lat.character((3, -2), (5, 7))
    assert lat.character((0, Fr(-1, 2)), (0, 1)) == Cyclotomic.rational(-1)
    assert lat.character((Fr(1, 3), 0), (1, 0)) == Cyclotomic.root(3, 1)


def test_breve_examples():
    assert lat.breve(7, 3) == 1
    assert lat.breve(Fr(1, 2), 3) == 2
    assert lat.breve(Fr(3, 2), 5) == 4
    with pytest.raises(lat.NotCoprime):
        lat.breve(Fr(1, 2), 4)


def test_breve_additivity_random_triples():
    rng = random.Random(20260101)
    done = 0
    while done < 1000:
        N = rng.randint(2, 30)
        r1, r2 = rng.randint(1, 12), rng.randint(1, 12)
        if math.gcd(r1, N) != 1 or math.gcd(r2, N) != 1:
            continue
        f1, f2 = Fr(rng.randint(-40, 40), r1), Fr(rng.randint(-40, 40), r2)
        assert (lat.breve(f1, N) + lat.breve(f2, N)) % N == lat.breve(f1 + f2, N)
        done += 1


# ----- properties -------------------------------------------------------

small = st.integers(-9, 9)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


full_rank = st.integers(1, 4).flatmap(square).filter(lambda m: lat.determinant(m) != 0)


@settings(max_examples=150, deadline=None)
@given(full_rank)
def test_snf_det_is_product_of_invariants(M):
    assert abs(lat.determinant(M)) == math.prod(lat.smith_normal_form(M).invariants)


@settings(max_examples=150, deadline=None)
@given(full_rank)
def test_dual_basis_pairs_to_identity(M):
    vecs = [tuple(r) for r in M]
    dual = lat.dual_basis(vecs)
    n = len(vecs)
    assert [[lat.pairing(dual[i], vecs[j]) for j in range(n)] for i in range(n)] == \
        [[int(i == j) for j in range(n)] for i in range(n)]


small_group = st.integers(1, 3).flatmap(square).filter(lambda m: 0 < abs(lat.determinant(m)) <= 64)


@settings(max_examples=80, deadline=None)
@given(small_group)
def test_quotient_transversal_and_closure(M):
    basis = [tuple(r) for r in M]
    g = lat.quotient_group(basis)
    elems = list(g)
    assert len(elems) == g.order == abs(lat.determinant(M))
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            assert not g.equivalent(a, b)
    canon = {g.canonical(x) for x in elems}
    for a in elems:
        for b in elems:
            assert g.canonical(tuple(x + y for x, y in zip(a, b))) in canon


@settings(max_examples=80, deadline=None)
@given(small_group, st.data())
def test_character_multiplicative_and_coset_invariant(M, data):
    basis = [tuple(r) for r in M]
    n = len(basis)
    dual = lat.dual_basis(basis)
    vec = st.lists(st.integers(-5, 5), min_size=n, max_size=n)
    c1, c2 = data.draw(vec), data.draw(vec)
    u1 = tuple(sum(c * d[k] for c, d in zip(c1, dual)) for k in range(n))
    u2 = tuple(sum(c * d[k] for c, d in zip(c2, dual)) for k in range(n))
    r1, r2 = data.draw(vec), data.draw(vec)
    uu = tuple(a + b for a, b in zip(u1, u2))
    rr = tuple(a + b for a, b in zip(r1, r2))
    assert lat.character(uu, r1) == lat.character(u1, r1) * lat.character(u2, r1)
    assert lat.character(u1, rr) == lat.character(u1, r1) * lat.character(u1, r2)
    shift = data.draw(vec)
    moved = tuple(r + sum(s * b[k] for s, b in zip(shift, basis)) for k, r in enumerate(r1))
    assert lat.character(u1, moved) == lat.character(u1, r1)


def test_cyclotomic_basics():
    z3 = Cyclotomic.root(3)
    assert z3 ** 3 == Cyclotomic.rational(1)
    assert (1 + z3 + z3 * z3).is_zero()
    i = Cyclotomic.root(4)
    assert i * i == Cyclotomic.rational(-1)
    assert Cyclotomic.exp2pi(Fr(1, 2)) == Cyclotomic.rational(-1)
    assert (z3 + 2).inverse() * (z3 + 2) == Cyclotomic.rational(1)
    assert abs(complex(Cyclotomic.root(8)) - complex(2 ** -0.5, 2 ** -0.5)) < 1e-12


def test_cyclotomic_mixed_conductors():
    a = Cyclotomic.root(4) + Cyclotomic.root(3)
    assert abs(complex(a) - (1j + complex(-0.5, 3 ** 0.5 / 2))) < 1e-12
    assert a - Cyclotomic.root(3) == Cyclotomic.root(4)
