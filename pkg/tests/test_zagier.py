import math
from fractions import Fraction

import pytest

from eulerlab.hpreal import DomainError, ExtReal, const_pi, sinc_pi
from eulerlab.zeta_core import zeta, zeta_bar
from eulerlab.euler_sums import DoubleIndex, double_direct
from eulerlab.zagier import (
    HIndex,
    eval_F,
    eval_Fstar,
    h_closed,
    h_direct,
    h_single,
    hstar_closed,
    hstar_closed_via_double,
    hstar_pilehrood,
    mzv_direct,
    sum_identities,
    zeta_bar_odd_from_hstar,
    zeta_from_hstar,
)
from conftest import approx_abs

F = Fraction
N = 100_000


def test_h_single_values(frozen):
    assert float(h_single(0)) == 1.0 and float(h_single(0, star=True)) == 1.0
    assert abs(float(h_single(1) - zeta(2))) < 1e-31
    assert abs(float(h_single(1, star=True) - zeta(2))) < 1e-31  # -2*zeta(2-bar)
    # pi^(2a)/(2a+1)! at a = 2
    expected = frozen["pi"] ** 4 / math.factorial(5)
    assert approx_abs(h_single(2), expected, F(1, 10 ** 28))
    with pytest.raises(DomainError):
        h_single(21)


def test_h_index_exponent_pattern():
    assert HIndex(2, 1).exponents == (2, 2, 3, 2)
    assert HIndex(0, 0).exponents == (3,)
    with pytest.raises(DomainError):
        HIndex(-1, 0)


def test_h_direct_weight3_both_variants():
    for star in (False, True):
        res = h_direct(HIndex(0, 0, star), N)
        assert abs(float(res.value - zeta(3))) < 1e-8


def test_h_direct_vs_closed_small():
    res = h_direct(HIndex(1, 0), N)
    assert abs(float(res.value - h_closed(1, 0))) < 1e-6


def test_h_direct_depth_cap():
    with pytest.raises(DomainError):
        h_direct(HIndex(5, 4), N)


def test_mzv_direct_validation():
    with pytest.raises(DomainError):
        mzv_direct((1, 2), n_max=N)  # exponent below 2
    with pytest.raises(DomainError):
        mzv_direct((2,) * 10, n_max=N)
    # depth-2 all-2 cross-check: zeta(2,2) = pi^4/120
    res = mzv_direct((2, 2), n_max=N)
    assert abs(float(res.value - const_pi() ** 4 / 120)) < 1e-8


def test_quadruple_agreement():
    for total in range(0, 6):
        for a in range(total + 1):
            b = total - a
            hc = h_closed(a, b)
            hsc = hstar_closed(a, b)
            assert abs(float(hc - h_direct(HIndex(a, b), N).value)) < 1e-6
            assert abs(float(hsc - h_direct(HIndex(a, b, True), N).value)) < 1e-6
            assert abs(float(hsc - hstar_pilehrood(a, b, N))) < 1e-6
            assert abs(float(hsc - hstar_closed_via_double(a, b))) < 1e-24
            assert float(hc) > 0
            assert float(hsc) >= float(hc)


def test_pilehrood_weight3(frozen):
    assert approx_abs(hstar_pilehrood(0, 0, N), frozen["zeta3"], F(1, 10 ** 8))
    assert abs(float(hstar_pilehrood(1, 0, N) - hstar_closed(1, 0))) < 1e-6
    assert abs(float(hstar_pilehrood(0, 1, N) - h_direct(HIndex(0, 1, True), N).value)) < 1e-6


def test_sum_identities():
    for k in range(1, 7):
        rh, rhs = sum_identities(k)
        assert abs(float(rh)) <= 1e-24, k
        assert abs(float(rhs)) <= 1e-24, k
    with pytest.raises(DomainError):
        sum_identities(7)


def test_zeta_bar_odd_from_hstar():
    # K = 1 collapses to -(3/4) zeta(3)
    assert abs(float(zeta_bar_odd_from_hstar(1) + Fraction(3, 4) * zeta(3))) < 1e-30
    for k in range(1, 7):
        assert abs(float(zeta_bar_odd_from_hstar(k) - zeta_bar(2 * k + 1))) <= 1e-24


def test_zeta_from_hstar(frozen):
    assert approx_abs(zeta_from_hstar(0, 1), frozen["zeta3"] / 8, F(1, 10 ** 24))
    for (r, s) in ((1, 1), (0, 2)):
        direct = double_direct(DoubleIndex(2 * r + 1, 2 * s, False, True), N).value
        assert abs(float(zeta_from_hstar(r, s) - direct)) < 1e-6
    with pytest.raises(DomainError):
        zeta_from_hstar(1, 0)


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------

def test_reflection_identity():
    for (x, y) in ((F(1, 4), F(1, 3)), (F(1, 2), F(1, 5)), (F(3, 8), F(3, 8))):
        lhs = eval_F(x, y)
        rhs = -sinc_pi(ExtReal.from_fraction(y)) * sinc_pi(ExtReal.from_fraction(x)) * eval_Fstar(y, x)
        assert abs(float(lhs - rhs)) < 1e-18, (x, y)


def test_eval_f_against_term_series():
    # F(x,y) vs the truncated double series with closed-form coefficients
    x, y = F(1, 4), F(1, 4)
    xv, yv = ExtReal.from_fraction(x), ExtReal.from_fraction(y)
    total = ExtReal(0.0)
    for t in range(0, 6):
        for a in range(t + 1):
            b = t - a
            sgn = 1 if (a + b + 1) % 2 == 0 else -1
            total = total + sgn * h_closed(a, b) * xv ** (2 * a + 2) * yv ** (2 * b)
    assert abs(float(eval_F(x, y) - total)) < 1e-6


def test_diagonal_route(frozen):
    x = F(1, 4)
    xv = ExtReal.from_fraction(x)
    acc = ExtReal(0.0)
    for r in range(1, 18):
        acc = acc + zeta(2 * r + 1) * xv ** (2 * r)
    assert abs(float(eval_F(x, x) + sinc_pi(xv) * acc)) < 1e-18


def test_eval_f_domain_and_zeroes():
    assert float(eval_F(0, F(1, 3))) == 0.0
    assert float(eval_Fstar(F(1, 3), 0)) == 0.0
    with pytest.raises(DomainError):
        eval_F(F(3, 4), F(1, 4))
    with pytest.raises(DomainError):
        eval_Fstar(F(1, 4), F(2, 3))
