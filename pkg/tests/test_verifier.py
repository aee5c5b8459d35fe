import random

import pytest

from k3gon import (
    C,
    H,
    ConstraintA,
    DivClass,
    EnumerationError,
    HypothesisViolation,
    K3Lattice,
    Params,
    bn_divisor_solutions,
    brill_noether_number,
    check_very_ample_order,
    compute_alpha,
    enumerate_A,
    f_value,
    h1_normal_vanishes,
    in_A,
    intersect,
    is_effective,
    mori_exists,
    rathmann_exists,
    self_int,
    theorem1_applicable,
    theorem3_applicable,
)
from k3gon.verifier import MoriCase, VeryAmpleVerdict, a_n_range, violates_very_ample_chain
from oracles import brute_force_A, brute_force_f, chain_holds

P = Params


@pytest.mark.parametrize(
    "p,D,value",
    [(P(16, 29, 3), DivClass(-2, 1), 16), (P(16, 29, 3), H, 12), (P(18, 23, 3), C, 0)],
)
def test_f_value(p, D, value):
    assert f_value(p, D) == value


def test_f_value_at_h_is_expected_bound():
    for p in (P(16, 29, 3), P(30, 80, 5), P(7, 9, 2)):
        assert f_value(p, H) == p.d - 2 * p.r + 2
        assert f_value(p, C) == 0


def test_f_value_matches_bilinear_form():
    rng = random.Random(0)
    for _ in range(2000):
        p = P(rng.randint(1, 80), rng.randint(0, 200), rng.randint(1, 8))
        D = DivClass(rng.randint(-500, 500), rng.randint(-500, 500))
        L = K3Lattice(p, certify=False)
        assert f_value(p, D) == intersect(L, D, C) - self_int(L, D)
        assert f_value(p, D) == f_value(p, C - D)


@pytest.mark.parametrize("D,inside", [(DivClass(1, 0), True), (DivClass(2, 0), False),
                                      (DivClass(-3, 1), False), (DivClass(-2, 1), True)])
def test_in_A_examples(D, inside):
    assert in_A(ConstraintA(P(16, 29, 3)), D) is inside


def test_enumerate_A_hand_examples():
    assert enumerate_A(ConstraintA(P(16, 29, 3))) == [DivClass(1, 0), DivClass(-2, 1)]
    assert enumerate_A(ConstraintA(P(18, 23, 3))) == [DivClass(1, 0)]


@pytest.mark.parametrize("p", [P(4, 3, 3), P(3, 1, 3), P(10, 40, 3)])
def test_enumerate_A_precondition(p):
    with pytest.raises(EnumerationError):
        enumerate_A(ConstraintA(p))


def test_enumerate_A_matches_box_oracle():
    rng = random.Random(21)
    checked = 0
    while checked < 60:
        p = P(rng.randint(5, 40), rng.randint(2, 90), rng.randint(2, 5))
        if p.d ** 2 <= 4 * (p.r - 1) * (p.g - 1):
            continue
        lo, hi = a_n_range(p)
        box_n = max(hi + 3, 6)
        # (ii) confines m to |m| <= (d + |n| d) / 2 + 1
        box_m = (p.d + box_n * p.d) // 2 + 2
        for strict in (False, True):
            got = [tuple(D) for D in enumerate_A(ConstraintA(p, strict))]
            want = sorted(brute_force_A(p.d, p.g, p.r, box_m, box_n, strict), key=lambda x: (x[1], x[0]))
            assert got == want, p
        checked += 1


def test_strict_mode_is_subset_and_keeps_h():
    for d in range(6, 30):
        for g in range(d + 1, 60):
            for r in (2, 3, 4):
                p = P(d, g, r)
                if d * d <= 4 * (r - 1) * (g - 1):
                    continue
                default = set(enumerate_A(ConstraintA(p)))
                strict = set(enumerate_A(ConstraintA(p, True)))
                assert strict <= default
                if d <= g - 1 and 2 < 2 * r - 2 < d - 2:
                    assert H in default and H in strict


def test_compute_alpha_examples():
    rep = compute_alpha(P(16, 29, 3))
    assert (rep.alpha, rep.minimizers) == (12, [H])
    assert [brute_force_f(16, 29, 3, D) for D in rep.enumerated] == [12, 16]
    assert rep.guaranteed and rep.n_range == (-2, 2)

    rep = compute_alpha(P(18, 23, 3))
    assert (rep.alpha, rep.minimizers, rep.enumerated) == (14, [H], [H])


def test_compute_alpha_hypothesis_violation():
    with pytest.raises(HypothesisViolation, match="zero-represented"):
        compute_alpha(P(16, 31, 3), strict=True)
    rep = compute_alpha(P(16, 31, 3))
    assert not rep.guaranteed
    assert rep.hypotheses.failing() == ["zero_not_represented"]


def test_compute_alpha_double_minimizer_at_d_equals_g_minus_one():
    rep = compute_alpha(P(12, 13, 3))
    assert rep.guaranteed
    assert rep.alpha == 8
    assert rep.minimizers == [H, C - H]


def test_theorem3_examples():
    assert theorem3_applicable(P(18, 23, 3)).ok
    rep = theorem3_applicable(P(16, 31, 3))
    assert rep.flags["zero_not_represented"] is False
    rep = theorem3_applicable(P(14, 25, 3))
    assert rep.flags["discriminant_bound"] is False


def test_theorem3_uses_r4_bound():
    # r = 4: d^2 > 4 * 3 * (g + 2)
    rep = theorem3_applicable(P(20, 31, 4))
    assert rep.quantities["disc_rhs"] == 4 * 3 * 33


@pytest.mark.parametrize("d,g,vanishes", [(18, 23, True), (20, 49, False), (19, 45, False), (22, 57, False), (22, 50, True)])
def test_h1_normal_vanishes(d, g, vanishes):
    assert h1_normal_vanishes(d, g) is vanishes


def test_h1_matches_c_minus_4h_numerics():
    # the closed form equals the raw effectiveness criterion for C - 4H at r = 3
    for d in range(5, 61):
        for g in range(2, 241):
            sq = 2 * g - 2 - 8 * d + 64
            dh = d - 16
            assert h1_normal_vanishes(d, g) == (not (sq >= 0 and dh > 2))


def test_very_ample_examples():
    p = P(16, 29, 3)
    assert check_very_ample_order(p, 9).verdict is VeryAmpleVerdict.NO_VIOLATOR
    res = check_very_ample_order(p, 11)
    assert res.verdict is VeryAmpleVerdict.VIOLATOR
    assert H in res.violators
    assert chain_holds(16, 29, 3, 11, (1, 0))


def test_very_ample_matches_box_oracle():
    rng = random.Random(9)
    checked = 0
    while checked < 25:
        p = P(rng.randint(8, 40), rng.randint(2, 90), rng.randint(3, 5))
        L = K3Lattice(p)
        if not L.certified or L.form.disc <= 0:
            continue
        for k in range(0, p.d):
            res = check_very_ample_order(p, k, L)
            box = [(m, n) for n in range(-15, 16) for m in range(-120, 121)
                   if chain_holds(p.d, p.g, p.r, k, (m, n))]
            assert sorted(map(tuple, res.violators)) == sorted(box), (p, k)
        checked += 1


def test_very_ample_violators_lie_in_A_when_cd_small():
    p = P(16, 29, 3)
    L = K3Lattice(p)
    for k in range(0, 16):
        for D in check_very_ample_order(p, k, L).violators:
            assert violates_very_ample_chain(L, D, k)
            if intersect(L, C, D) <= p.g - 1:
                assert in_A(ConstraintA(p), D)


@pytest.mark.parametrize("d,g,case", [(5, 3, MoriCase.NOT_EXISTS), (8, 9, MoriCase.BOUNDARY),
                                      (10, 13, MoriCase.NOT_EXISTS), (18, 23, MoriCase.INTERIOR),
                                      (4, 3, MoriCase.BOUNDARY)])
def test_mori(d, g, case):
    assert mori_exists(d, g) is case


@pytest.mark.parametrize("d,g,r,ok", [(20, 10, 4, True), (16, 29, 4, False), (18, 23, 3, True)])
def test_rathmann(d, g, r, ok):
    assert rathmann_exists(P(d, g, r)) is ok


def test_theorem1_examples():
    rep = theorem1_applicable(18, 23)
    assert rep.ok
    assert rep.derived_pairs == [(18, 23, 13), (19, 24, 13), (19, 25, 14), (20, 26, 14)]
    rep = theorem1_applicable(16, 29)
    assert rep.ok
    assert rep.derived_pairs == [(16, 29, 12), (17, 30, 13), (17, 31, 13), (18, 32, 14)]
    rep = theorem1_applicable(16, 31)
    assert not rep.ok and rep.failing() == ["shifted_disc_not_square"]
    assert rep.derived_pairs == []


@pytest.mark.parametrize("g,sols", [(23, [(1, 12), (2, 17), (3, 20)]), (3, [(1, 2)]), (4, [])])
def test_bn_divisor_solutions(g, sols):
    assert bn_divisor_solutions(g) == sols


def test_bn_divisor_solutions_against_grid():
    for g in range(2, 150):
        grid = [(r, d) for r in range(1, g) for d in range(r + 1, g)
                if brill_noether_number(P(d, g, r)) == -1]
        assert bn_divisor_solutions(g) == grid
        for r, d in grid:
            assert brill_noether_number(P(d + 1, g, r)) == -1 + (r + 1)


def test_bn_divisor_solutions_rejects_small_genus():
    with pytest.raises(ValueError):
        bn_divisor_solutions(1)


def test_effective_c_minus_4h_examples_need_unchecked_lattice():
    # (20, 49) has an elliptic pencil (disc 16), so only the raw criterion applies
    L = K3Lattice(P(20, 49, 3))
    assert not L.certified
    assert is_effective(L, C - 4 * H, check=False)


def test_alpha_invariant_over_box_allows_second_minimizer_at_d_equals_g_minus_one():
    from k3gon.verifier import expected_minimizers
    seen = 0
    for r in (3, 4, 5):
        for d in range(12, 41):
            for g in range(10, 81):
                p = P(d, g, r)
                if not theorem3_applicable(p).ok:
                    continue
                rep = compute_alpha(p)
                assert rep.alpha == d - 2 * r + 2
                want = [H, C - H] if d == g - 1 else [H]
                assert rep.minimizers == want == expected_minimizers(p)
                seen += 1
    assert seen >= 20
