import pytest

from mfgenus import classify as C
from mfgenus.cohomology import is_T_Cartier, ray_class
from mfgenus.fan import (
    bundle_fan,
    example_fan_1,
    example_fan_2,
    hirzebruch_fan,
    projective_fan,
    scaled_weights,
    weighted_projective_2211,
)
from mfgenus.genera import FracExpPoly, PreconditionUnmet


def test_toddone_examples():
    for n in (1, 2, 3, 4):
        assert C.check_toddone(projective_fan(n))
    assert not C.check_toddone(scaled_weights(projective_fan(1), 2))
    for b in (1, 2, 5):
        assert C.check_toddone(example_fan_1(b), projections=True)


def test_max_divisibility_examples():
    for n in (1, 2, 3, 4):
        assert C.max_divisibility(projective_fan(n))[1] == n + 1
    for n in (2, 3, 4):
        assert C.max_divisibility(weighted_projective_2211(n))[1] == n
    plain, tc = C.max_divisibility(example_fan_2(2))
    assert plain == 3 and tc < 3
    assert C.max_divisibility(example_fan_1(3)) == (5, 1)
    with pytest.raises(PreconditionUnmet):
        C.max_divisibility(scaled_weights(projective_fan(2), 2))


def test_classify_projective():
    r = C.classify_extremal(projective_fan(3))
    assert r.family == C.PROJECTIVE
    assert str(r.ty) == "1 - y + y^2 - y^3"


def test_classify_case_b():
    r = C.classify_extremal(weighted_projective_2211(3))
    assert r.family == C.CASE_B
    assert sorted(r.evidence["relation"], reverse=True) == [2, 2, 1, 1]
    assert sum(r.evidence["relation"]) == 6
    assert r.evidence["twisted_K"] == [[2, 3]]
    assert r.orbifold_ty == FracExpPoly.from_coefficients([1, 1]) * FracExpPoly.from_coefficients([1, 1, 1])


def test_classify_case_a():
    # twists need k_2 + ... + k_n + 2 = 0 mod n
    for n, k in [(2, (0,)), (3, (1, 0)), (4, (2, 0, 0))]:
        r = C.classify_extremal(bundle_fan(n, k))
        assert r.max_T_cartier_N == n
        assert r.family == C.CASE_A
        assert r.ty == FracExpPoly.from_coefficients([1, 1]) * FracExpPoly.from_coefficients([1] * n)


def test_classify_other_and_preconditions():
    assert C.classify_extremal(hirzebruch_fan(1)).family == C.OTHER
    assert C.classify_extremal(example_fan_1(3)).family == C.OTHER
    with pytest.raises(PreconditionUnmet):
        C.classify_extremal(example_fan_2(2))


def test_identity_failure_is_reported(monkeypatch):
    monkeypatch.setattr(C, "verify_projective", lambda fan: C.BranchCheck(False, ["forced"]))
    with pytest.raises(C.ContradictsPaper):
        C.classify_extremal(projective_fan(2))


def test_report_lines():
    lines = C.classify_extremal(projective_fan(2)).lines()
    assert lines[:4] == ["toddone yes", "max_plain_N 3", "max_T_cartier_N 3", f"family {C.PROJECTIVE}"]


# ----- properties -------------------------------------------------------


def test_dichotomy_is_exclusive(fan_corpus):
    seen = 0
    for name, fan in fan_corpus.items():
        if not fan.primitive or not C.check_toddone(fan) or fan.rank < 2:
            continue
        if C.max_divisibility(fan)[1] != fan.rank:
            continue
        a, b = C.verify_case_a(fan).holds, C.verify_case_b(fan).holds
        assert a != b, name
        seen += 1
    assert seen >= 5


def test_case_b_ledger_and_cartier_double():
    for n in (2, 3, 4):
        fan = weighted_projective_2211(n)
        check = C.verify_case_b(fan)
        lhs, mid, rhs = check.evidence["ledger"]
        assert lhs == mid == rhs == 2 * n
        (K,) = check.evidence["twisted_K"]
        for j in K:
            assert is_T_Cartier(ray_class(fan, j, 2))
            assert not is_T_Cartier(ray_class(fan, j, 1))
