from fractions import Fraction as Fr

import pytest

from mfgenus import lattice as lat
from mfgenus.cohomology import c1_is_zero, search_c1_zero_fan, t_cartier_divisibility
from mfgenus.fan import (
    bundle_fan,
    example_fan_1,
    example_fan_2,
    h_vector,
    hat_HK,
    projective_fan,
    scaled_weights,
    weighted_projective_2211,
)
from mfgenus.genera import (
    CyclicExpPoly,
    FracExpPoly,
    PreconditionUnmet,
    check_breve_vanishing,
    check_hatT_divisible,
    check_hatT_vanishing,
    coprime_to_groups,
    modified_orbifold_ty,
    orbifold_ty,
    ty_genus,
    ty_via_e,
)


def w_sum(k):
    return FracExpPoly.from_coefficients([1] * k)


ONE_PLUS_W = FracExpPoly.from_coefficients([1, 1])


def test_ty_examples():
    for n in (1, 2, 3, 4):
        assert ty_genus(projective_fan(n)) == w_sum(n + 1)
    assert str(ty_genus(projective_fan(1))) == "1 - y"
    assert str(ty_genus(projective_fan(2))) == "1 - y + y^2"
    for n in (2, 3):
        fan = bundle_fan(n, (1,) + (0,) * (n - 2))
        assert ty_genus(fan) == ONE_PLUS_W * w_sum(n)


def test_ty_via_e_examples():
    assert ty_via_e(projective_fan(1)).coefficients() == [1, 1]
    assert ty_via_e(projective_fan(2)).coefficients() == [1, 1, 1]
    for n in (2, 3, 4):
        assert ty_via_e(weighted_projective_2211(n)) == w_sum(n + 1)


def test_orbifold_examples():
    p3 = projective_fan(3)
    assert orbifold_ty(p3) == ty_genus(p3)
    p211 = example_fan_1(2)
    assert orbifold_ty(p211).coefficients() == [1, 2, 1]
    assert str(orbifold_ty(p211)) == "1 - 2*y + y^2"
    for n in (2, 3, 4):
        assert orbifold_ty(weighted_projective_2211(n)) == ONE_PLUS_W * w_sum(n)


def test_orbifold_fractional_exponents():
    p = orbifold_ty(example_fan_2(2))
    assert not p.has_integer_exponents()
    # T_y = 1 + w + w^2; K={2} adds w^(1/2)(1 + w); K={1,3} adds w
    assert p.as_dict == {0: 1, 1: 2, 2: 1, Fr(1, 2): 1, Fr(3, 2): 1}


def test_modified_examples():
    p3 = projective_fan(3)
    assert modified_orbifold_ty(p3, 3).coeffs == (2, 1, 1)  # 1 + w + w^2 + w^3 mod w^3 - 1
    assert modified_orbifold_ty(projective_fan(2), 3).coeffs == (1, 1, 1)
    assert modified_orbifold_ty(example_fan_1(1), 3).coeffs == (1, 1, 1)
    assert modified_orbifold_ty(example_fan_1(3), 5).coeffs == (1, 1, 1, 1, 1)
    assert modified_orbifold_ty(example_fan_2(2), 3).coeffs == (2, 2, 2)
    with pytest.raises(lat.NotCoprime):
        modified_orbifold_ty(example_fan_1(2), 2)


def test_hatT_divisible_examples():
    for n in (1, 2, 3, 4):
        r = check_hatT_divisible(projective_fan(n), n + 1)
        assert r and r.detail == "quotient 1"
    r = check_hatT_divisible(example_fan_1(2), 2)
    assert r and r.detail == "quotient 1 + w"
    for n in (2, 3, 4):
        assert check_hatT_divisible(weighted_projective_2211(n), n)
    with pytest.raises(PreconditionUnmet):
        check_hatT_divisible(projective_fan(2), 2)


def test_breve_vanishing_examples():
    for fan, N in [(projective_fan(2), 3), (example_fan_1(3), 5), (example_fan_2(2), 3), (example_fan_1(1), 3)]:
        r = check_breve_vanishing(fan, N)
        assert r
        assert dict(r.certificates) == {"root-evaluation": True, "cyclotomic-multiple": True}
    with pytest.raises(PreconditionUnmet):
        check_breve_vanishing(example_fan_1(2), 2)
    with pytest.raises(PreconditionUnmet):
        check_breve_vanishing(projective_fan(2), 2)


def test_hatT_vanishing_examples(fan_corpus):
    for name, fan in fan_corpus.items():
        if name == "c1zero":
            continue
        assert not c1_is_zero(fan)
        with pytest.raises(PreconditionUnmet):
            check_hatT_vanishing(fan)
    fan = search_c1_zero_fan()
    assert check_hatT_vanishing(fan)
    assert check_hatT_vanishing(scaled_weights(fan, 2))
    assert str(ty_genus(fan)) == "-2*y"


def test_cyclic_poly_evaluation():
    p = CyclicExpPoly(4, (1, 0, 1, 0))
    assert p.evaluate(1).is_zero() and not p.evaluate(2).is_zero()
    assert not p.vanishes_at_nontrivial_roots()
    assert CyclicExpPoly.from_terms(3, [(5, 1), (-1, 2)]).coeffs == (0, 0, 3)


def test_frac_poly_division():
    p = FracExpPoly.from_coefficients([1, 2, 2, 1])
    assert p.divmod_cyclotomic_sum(3) == ([1, 1], [0, 0])
    assert FracExpPoly.from_coefficients([1, 0, 1]).divmod_cyclotomic_sum(2)[1] == [2]


# ----- properties -------------------------------------------------------


def test_ty_matches_e_form_on_corpus(fan_corpus):
    for name, fan in fan_corpus.items():
        assert ty_genus(fan) == ty_via_e(fan), name


def test_orbifold_reduces_without_sectors(fan_corpus):
    for name, fan in fan_corpus.items():
        if all(not hat_HK(fan, K) for K in fan.simplices if K):
            assert orbifold_ty(fan) == ty_genus(fan), name


def test_orbifold_exponent_range(fan_corpus):
    for name, fan in fan_corpus.items():
        p = orbifold_ty(fan)
        assert all(0 <= e <= fan.rank for e, _ in p.terms), name
        assert p.as_dict.get(0, 0) == h_vector(fan)[0], name


def test_modified_is_breve_image(fan_corpus):
    checked = 0
    for name, fan in fan_corpus.items():
        for N in range(2, 8):
            if not coprime_to_groups(fan, N):
                continue
            image = CyclicExpPoly.from_terms(N, [(lat.breve(e, N), c) for e, c in orbifold_ty(fan).terms])
            assert modified_orbifold_ty(fan, N) == image, (name, N)
            checked += 1
    assert checked > 50


def test_weight_linearity(fan_corpus):
    for name in ["P2", "example1(b=2)", "example2(b=3)", "P3(2..2,1,1)", "c1zero"]:
        fan = fan_corpus[name]
        one, two, three = fan, scaled_weights(fan, 2), scaled_weights(fan, 3)
        assert ty_genus(one) + ty_genus(two) == ty_genus(three)
        assert ty_via_e(one) + ty_via_e(two) == ty_via_e(three)
        assert orbifold_ty(one) + orbifold_ty(two) == orbifold_ty(three)
        N = 5 if coprime_to_groups(fan, 5) else 7
        a, b, c = (modified_orbifold_ty(f, N).coeffs for f in (one, two, three))
        assert tuple(x + y for x, y in zip(a, b)) == c


def test_hatT_divisibility_whenever_t_cartier(fan_corpus):
    for name, fan in fan_corpus.items():
        for N in range(2, fan.rank + 2):
            if t_cartier_divisibility(fan, N).t_cartier_divisible:
                assert check_hatT_divisible(fan, N), (name, N)
