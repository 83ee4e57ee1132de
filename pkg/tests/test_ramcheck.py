import random
from fractions import Fraction as F

import pytest

from ramforge import (
    BreakData,
    TheoremInputs,
    check_conditions,
    extract_yhz,
    f_shift,
    f_shift_sum_check,
    g_floor,
    m0,
    phi_from_breaks,
    proot_check,
    psi_from_breaks,
    psi_ML_lower_bound,
    q_r_values,
    tame_params,
)
from ramforge.ramcheck import phi_EK_closed_form

from helpers import random_break_data


def ladder(p, n, e=1):
    """The forced break pattern over an unramified-style base."""
    return BreakData(p, e, tuple(range(1, n + 1)))


class TestTameParams:
    def test_unramified(self):
        tp = tame_params(5, 1)
        assert (tp.s, tp.e0) == (4, 1)

    def test_shared_factor(self):
        tp = tame_params(7, 3)
        assert (tp.s, tp.e0) == (2, 1)

    def test_full_gcd(self):
        tp = tame_params(5, 4)
        assert (tp.s, tp.e0) == (1, 1)

    def test_rejects_wild_base(self):
        with pytest.raises(ValueError):
            tame_params(5, 10)


class TestFShift:
    def test_mid_case(self):
        assert f_shift(tame_params(5, 1), 1, 9) == 4

    def test_zero_offset(self):
        assert f_shift(tame_params(5, 1), 1, 5) == 24

    def test_off_lattice(self):
        assert f_shift(tame_params(5, 1), 1, 6) == 0

    def test_periodicity(self):
        rng = random.Random(3)
        for p in (5, 7, 11):
            for e in range(1, p):
                tp = tame_params(p, e)
                for m in (1, 2):
                    period = tp.s * p**m
                    for _ in range(20):
                        t = rng.randint(-2 * period, 3 * period)
                        assert f_shift(tp, m, t) == f_shift(tp, m, t + period)


class TestFShiftSumCheck:
    def test_small_window_by_enumeration(self):
        tp = tame_params(5, 1)
        window = [f_shift(tp, 1, t) for t in range(5, 25)]
        assert sum(window) == 40 and sorted(set(window)) == [0, 4, 24]
        assert f_shift_sum_check(tp, 1)

    def test_p7(self):
        tp = tame_params(7, 1)
        assert f_shift_sum_check(tp, 1)
        assert sum(f_shift(tp, 1, t) for t in range(7, 49)) == 84

    def test_sweep(self):
        for p in (5, 7, 11):
            for e in range(1, p):
                tp = tame_params(p, e)
                for m in (1, 2, 3):
                    assert f_shift_sum_check(tp, m)


class TestGFloor:
    def test_above_boundary(self):
        assert g_floor(tame_params(5, 1), 1, 30) == 1

    def test_boundary(self):
        tp = tame_params(5, 1)
        assert g_floor(tp, 1, tp.e0 * (5**2 + 5 - 1)) == 0

    def test_one_period_up(self):
        tp = tame_params(5, 1)
        assert g_floor(tp, 1, tp.e0 * (5**2 + 5 - 1) + tp.s * 5) == 1


class TestM0:
    def test_n3(self):
        assert m0(TheoremInputs(5, 1, 3, ladder(5, 3))) == 2

    def test_n2(self):
        assert m0(TheoremInputs(5, 1, 2, ladder(5, 2))) == 1

    def test_p7_n4(self):
        assert m0(TheoremInputs(7, 1, 4, ladder(7, 4))) == 3

    def test_unramified_pattern_sweep(self):
        for p in (5, 7, 11):
            for n in range(2, 9):
                assert m0(TheoremInputs(p, 1, n, ladder(p, n))) == n - 1

    def test_two_break_ramified_base(self):
        bd = BreakData(5, 4, (5, 9))
        assert m0(TheoremInputs(5, 4, 2, bd)) == 1

    def test_vanishing_case(self):
        # n = 1 over e = 4: psi(5) = 21 > 20 = e*p, so no m >= 0 works
        bd = BreakData(5, 4, (1,))
        assert m0(TheoremInputs(5, 4, 1, bd)) is None


class TestQRValues:
    def test_equal_case(self):
        bd = ladder(5, 3)
        q, r = q_r_values(tame_params(5, 1), extract_yhz(bd), 1, 2)
        assert (q, r) == (25, 149)

    def test_y_above_e(self):
        bd = BreakData(5, 4, (5, 9))
        q, r = q_r_values(tame_params(5, 4), extract_yhz(bd), 4, 1)
        assert (q, r) == (10, 34)

    def test_p7(self):
        bd = ladder(7, 2)
        q, r = q_r_values(tame_params(7, 1), extract_yhz(bd), 1, 1)
        assert (q, r) == (7, 55)


class TestPsiMLLowerBound:
    def test_t_zero(self):
        ti = TheoremInputs(5, 1, 3, ladder(5, 3))
        tp, yhz = tame_params(5, 1), extract_yhz(ti.bd)
        assert psi_ML_lower_bound(ti, tp, yhz, 2, 0) == 4 * 125

    def test_full_depth(self):
        ti = TheoremInputs(5, 1, 3, ladder(5, 3))
        tp, yhz = tame_params(5, 1), extract_yhz(ti.bd)
        assert psi_ML_lower_bound(ti, tp, yhz, 2, 2) == 12004

    def test_intermediate(self):
        ti = TheoremInputs(5, 1, 2, ladder(5, 2))
        tp, yhz = tame_params(5, 1), extract_yhz(ti.bd)
        assert psi_ML_lower_bound(ti, tp, yhz, 1, 1) == 484


class TestCheckConditions:
    def test_unramified_n3(self):
        rep = check_conditions(TheoremInputs(5, 1, 3, ladder(5, 3)))
        assert rep.all_pass and rep.guarantee == "p^2" and rep.m == 2
        # recompute each comparison with the piecewise-linear oracle
        psi, phi = psi_from_breaks(ladder(5, 3)), phi_from_breaks(ladder(5, 3))
        assert rep.cond3_rhs == psi(3) == 31
        assert rep.cond2_lhs == phi(125)
        assert psi(F(13, 4)) == F(249, 4) < 125  # cond2 via the psi side
        for item in rep.cond1_details:
            assert item.bound > item.threshold

    def test_boundary_strictness(self):
        rep = check_conditions(TheoremInputs(5, 1, 3, ladder(5, 3), a=31))
        assert not rep.cond3 and rep.guarantee == "none"
        assert rep.cond3_lhs == 31 and rep.cond3_rhs == 31

    def test_n2_guarantee(self):
        rep = check_conditions(TheoremInputs(5, 1, 2, ladder(5, 2), a=25, m=1))
        assert rep.all_pass and rep.guarantee == "p^1"

    def test_vacuous_when_m0_missing(self):
        bd = BreakData(5, 4, (1,))
        rep = check_conditions(TheoremInputs(5, 4, 1, bd))
        assert rep.guarantee == "none" and rep.status == "no_m"

    def test_zp_flag_gates_main_guarantee(self):
        rep = check_conditions(TheoremInputs(5, 1, 3, ladder(5, 3), contained_in_zp=False))
        assert rep.path == "proot" and rep.guarantee == "p^1 (proot)"
        assert rep.proot is not None and rep.proot.l == 25

    def test_rejects_inadmissible_break_data(self):
        with pytest.raises(ValueError, match="inadmissible"):
            TheoremInputs(5, 1, 2, BreakData(5, 1, (1, 3)))

    def test_t_sweep_rule(self):
        # y = e sweeps every t in [0, m]; y != e pins t = m
        bd = BreakData(5, 2, (2, 4, 6))
        ti = TheoremInputs(5, 2, 3, bd)
        assert m0(ti) == 2
        rep = check_conditions(ti)
        assert rep.t_examined == (0, 1, 2) and rep.all_pass
        # y > e needs e = p-1 with first break p
        bd2 = BreakData(7, 6, (7, 13))
        ti2 = TheoremInputs(7, 6, 2, bd2)
        rep2 = check_conditions(ti2)
        assert extract_yhz(bd2).y == 7 > 6
        assert rep2.t_examined == (rep2.m,)

    def test_randomized_soundness(self):
        # mirror of the acceptance sweep at a smaller sample size
        rng = random.Random(83)
        count = 0
        while count < 60:
            bd = random_break_data(rng, primes=(5, 7, 11), n_max=5)
            ti = TheoremInputs(bd.p, int(bd.e), bd.n, bd)
            if m0(ti) in (None, 0):
                continue
            rep = check_conditions(ti)
            assert rep.all_pass, (bd, rep)
            count += 1


class TestQIdentity:
    def test_q_equals_cyclotomic_step_image_plus_e0(self):
        # independent route to q: the cyclotomic-step transfer function
        # applied to the top break of the level-m compositum, plus e0
        rng = random.Random(97)
        from ramforge import PLFunc

        checked = 0
        while checked < 80:
            bd = random_break_data(rng, primes=(5, 7, 11), n_max=5)
            ti = TheoremInputs(bd.p, int(bd.e), bd.n, bd)
            m_val = m0(ti)
            if m_val in (None, 0):
                continue
            tp, yhz = tame_params(bd.p, int(bd.e)), extract_yhz(bd)
            q, _ = q_r_values(tp, yhz, int(bd.e), m_val)
            bps = (F(0),) + tuple(F(int(bd.e) * (i + 1)) for i in range(m_val))
            sls = tuple(F(tp.s * bd.p**i) for i in range(m_val + 1))
            psi_ek = PLFunc(bps, sls, F(0))
            if yhz.h == 0 and yhz.y > bd.e:
                u_top = yhz.y + (m_val - 1) * bd.e
            else:
                u_top = m_val * bd.e
            assert q == psi_ek(u_top) + tp.e0
            checked += 1


class TestPhiEKClosedForm:
    def test_matches_pl_oracle(self):
        # build the cyclotomic-step transfer function directly and compare
        rng = random.Random(89)
        for _ in range(50):
            bd = random_break_data(rng, primes=(5, 7, 11), n_max=4)
            ti = TheoremInputs(bd.p, int(bd.e), bd.n, bd)
            m_val = m0(ti)
            if m_val in (None, 0):
                continue
            tp, yhz = tame_params(bd.p, int(bd.e)), extract_yhz(bd)
            q, r = q_r_values(tp, yhz, int(bd.e), m_val)
            from ramforge import PLFunc

            bps = (F(0),) + tuple(F(int(bd.e) * (i + 1)) for i in range(m_val))
            sls = tuple(F(tp.s * bd.p**i) for i in range(m_val + 1))
            psi_ek = PLFunc(bps, sls, F(0))
            assert psi_ek.inverse()(r) == phi_EK_closed_form(tp, yhz, int(bd.e), m_val)


class TestProotCheck:
    def test_n3_path(self):
        rep = proot_check(TheoremInputs(5, 1, 3, ladder(5, 3)))
        assert rep.l == 25 and rep.m == 1 and rep.guarantee == "p^1 (proot)"
        assert rep.n == 2  # runs on the degree-p^(n-1) subextension

    def test_hypothesis_gate(self):
        rep = proot_check(TheoremInputs(5, 1, 2, ladder(5, 2)))
        assert rep.status == "not_applicable" and rep.guarantee == "none"

    def test_p7_l_value(self):
        # l = ceil((p-1)/p * psi(u)) with u = 4 the top break: psi(4) = 400
        rep = proot_check(TheoremInputs(7, 1, 4, ladder(7, 4)))
        assert psi_from_breaks(ladder(7, 4))(4) == 400
        assert rep.l == 343
        assert rep.m == 2 and rep.guarantee == "p^2 (proot)"
