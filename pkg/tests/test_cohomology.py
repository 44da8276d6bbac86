import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from mfgenus import lattice as lat
from mfgenus.classify import check_toddone
from mfgenus.cohomology import (
    FaceRingClass,
    c1_is_zero,
    cone_chern_restrictions,
    divisibility,
    embed,
    first_chern_class,
    is_T_Cartier,
    ray_class,
    restrict,
    search_c1_zero_fan,
    solve_congruence,
    t_cartier_divisibility,
    t_cartier_gcd,
)
from mfgenus.fan import (
    MultiFan,
    example_fan_1,
    example_fan_2,
    group_HI,
    projective_fan,
    scaled_weights,
    weighted_projective_2211,
)

P211 = example_fan_1(2)


def test_restrict_examples():
    zero = FaceRingClass(P211, (0, 0, 0))
    assert restrict(zero, {0, 2}) == (0, 0)
    assert restrict(ray_class(P211, 2), {0, 2}) == (0, Fr(-1, 2))
    assert restrict(first_chern_class(P211), {0, 1}) == (1, 1)


def test_restrict_rejects_non_cone():
    with pytest.raises(ValueError):
        restrict(first_chern_class(P211), {0})


def test_t_cartier_examples():
    p2 = projective_fan(2)
    assert all(is_T_Cartier(FaceRingClass(p2, c)) for c in [(1, 0, 0), (3, -2, 5), (0, 0, 7)])
    assert not is_T_Cartier(ray_class(P211, 2))
    assert is_T_Cartier(ray_class(P211, 2, 2))
    assert is_T_Cartier(first_chern_class(P211))


def test_plain_divisibility_examples():
    for n in (1, 2, 3, 4):
        w = divisibility(projective_fan(n), n + 1)
        assert w.divisible and w.u == (1,) * n
    for b in (1, 3, 5):
        assert divisibility(example_fan_1(b), b + 2)
    for b in (1, 2, 4, 5):
        assert divisibility(example_fan_2(b), 3)
    assert not divisibility(projective_fan(2), 2)


def test_t_cartier_divisibility_examples():
    for n in (1, 2, 3, 4):
        w = t_cartier_divisibility(projective_fan(n), n + 1)
        assert w.t_cartier_divisible and is_T_Cartier(w.x)
    for n in (2, 3, 4):
        assert t_cartier_divisibility(weighted_projective_2211(n), n).t_cartier_divisible
    assert t_cartier_divisibility(P211, 2).t_cartier_divisible
    fan = example_fan_2(2)
    w = t_cartier_divisibility(fan, 3)
    assert w.divisible and not w.t_cartier_divisible
    assert cone_chern_restrictions(fan)[frozenset({0, 1})] == (1, Fr(1, 2))


def test_t_cartier_witness_decomposes_c1():
    for n in (2, 3):
        fan = weighted_projective_2211(n)
        w = t_cartier_divisibility(fan, n)
        assert first_chern_class(fan) == w.x * n + embed(fan, w.u)


def test_t_cartier_gcd_values():
    assert t_cartier_gcd(projective_fan(2)) == 3
    assert t_cartier_gcd(P211) == 2
    assert t_cartier_gcd(weighted_projective_2211(3)) == 3
    assert t_cartier_gcd(example_fan_2(2)) is None
    assert t_cartier_gcd(search_c1_zero_fan()) == 0


def test_level_must_exceed_one():
    with pytest.raises(ValueError):
        divisibility(projective_fan(2), 1)


def test_c1_zero_examples():
    for n in (1, 2, 3):
        assert not c1_is_zero(projective_fan(n))
    line = MultiFan(1, [(1,), (-1,)], [{0}, {1}], [1, 1], [0, 0])
    assert not c1_is_zero(line)
    assert not c1_is_zero(MultiFan(1, [(2,), (-2,)], [{0}, {1}], [1, 1], [0, 0]))
    fan = search_c1_zero_fan()
    w = c1_is_zero(fan)
    assert w and all(lat.pairing(w.u, v) == 1 for v in fan.rays)
    assert fan.rays == ((3, -2), (2, -1), (1, 0), (0, 1))


def test_solve_congruence_is_lex_min():
    systems = [([(1, 0), (0, 1), (-1, -1)], 3), ([(1, 0), (0, 2), (-1, -2)], 3), ([(2, 1), (1, 3)], 5), ([(2, 0), (0, 2)], 4)]
    for rows, N in systems:
        brute = [u for u in itertools.product(range(N), repeat=len(rows[0]))
                 if all((lat.pairing(u, r) - 1) % N == 0 for r in rows)]
        assert solve_congruence(rows, [1] * len(rows), N) == (min(brute) if brute else None)


# ----- properties -------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([P211, example_fan_2(3), weighted_projective_2211(3), projective_fan(3)]), st.data())
def test_restrict_is_equivariant(fan, data):
    coeffs = data.draw(st.lists(st.integers(-6, 6), min_size=fan.n_rays, max_size=fan.n_rays))
    u = data.draw(st.lists(st.integers(-6, 6), min_size=fan.rank, max_size=fan.rank))
    x = FaceRingClass(fan, coeffs)
    for I in fan.maximal:
        assert restrict(x + embed(fan, u), I) == tuple(a + b for a, b in zip(restrict(x, I), u))


def test_t_cartier_implies_plain(fan_corpus):
    for name, fan in fan_corpus.items():
        for N in range(2, 7):
            if t_cartier_divisibility(fan, N).t_cartier_divisible:
                assert divisibility(fan, N).divisible, (name, N)


def test_cone_values_agree_mod_N(fan_corpus):
    probes = [(1,), (2,), (1, 0), (0, 1), (3, -2), (1, 0, 0), (1, 2, 3), (1, 0, 0, 0), (1, -2, 3, 5)]
    checked = 0
    for name, fan in fan_corpus.items():
        for N in range(2, 7):
            if any(lat.math.gcd(N, group_HI(fan, I).order) != 1 for I in fan.maximal):
                continue
            if not divisibility(fan, N):
                continue
            us = cone_chern_restrictions(fan)
            for v in (p for p in probes if len(p) == fan.rank):
                vals = {lat.breve(lat.pairing(u, v), N) for u in us.values()}
                assert len(vals) == 1, (name, N, v)
                checked += 1
    assert checked > 20


def test_t_cartier_bound_on_toddone_fans(fan_corpus):
    for name, fan in fan_corpus.items():
        if not check_toddone(fan):
            continue
        g = t_cartier_gcd(fan)
        # None: c1 is not T-Cartier, so no N applies; 0 would mean unbounded
        assert g is None or 0 < g <= fan.rank + 1, name


def test_doubled_weights_keep_divisibility():
    fan = projective_fan(2)
    assert t_cartier_divisibility(scaled_weights(fan, 2), 3).t_cartier_divisible
