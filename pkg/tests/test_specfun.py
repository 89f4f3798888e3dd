import math
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from struvebounds.errors import ConvergenceError, DomainError, StruveOverflowError
from struvebounds.specfun import (
    SeriesConfig,
    hyp_pfq,
    ln_gamma,
    struve_l,
    struve_l_large_x,
    struve_l_small_x,
    struve_l_via_1f2,
)

# 50-digit values from tests/oracle.py
L_REF = {
    (0.0, 1.0): 0.71024318593789088874,
    (1.0, 1.0): 0.22676438105580863683,
    (0.0, 2.0): 1.9374337579914456612,
    (0.5, 2.0): 1.5584020366298809069,
    (1.0, 0.01): 0.000021220800550384107903,
    (0.0, 100.0): 1.0737517071310738235e42,
    (5.0, 30.0): 512151464936.59375136,
    (2.5, 10.0): 2025.4774442031006409,
}


def rel(a, b):
    return abs(a - b) / abs(b)


class TestLnGamma:
    def test_one(self):
        assert ln_gamma(1.0) == 0.0

    def test_half(self):
        assert rel(ln_gamma(0.5), math.log(math.sqrt(math.pi))) <= 1e-15

    def test_oracle(self):
        assert rel(ln_gamma(7.5), 7.5343642367587329552) <= 1e-14

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, math.inf, math.nan])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            ln_gamma(bad)

    @settings(max_examples=200)
    @given(st.floats(min_value=1e-6, max_value=1000.0))
    def test_accuracy_against_mpmath(self, x):
        mp = pytest.importorskip("mpmath")
        ref = float(mp.loggamma(mp.mpf(x)))
        # lnGamma has zeros at 1 and 2; measure relative to max(|ref|, 1) there
        assert abs(ln_gamma(x) - ref) <= 1e-14 * max(abs(ref), 1.0)


class TestStruveL:
    @pytest.mark.parametrize("key", sorted(L_REF))
    def test_oracle_values(self, key):
        nu, x = key
        assert rel(struve_l(nu, x), L_REF[key]) <= 1e-14

    def test_zero_argument(self):
        assert struve_l(0.25, 0.0) == 0.0

    def test_zero_argument_nu_minus_one(self):
        assert struve_l(-1.0, 0.0) == pytest.approx(2 / math.pi, rel=1e-15)

    def test_zero_argument_divergent(self):
        with pytest.raises(DomainError, match="diverges"):
            struve_l(-1.25, 0.0)

    @pytest.mark.parametrize("nu", [-1.5, -2.0])
    def test_order_domain(self, nu):
        with pytest.raises(DomainError, match="-3/2"):
            struve_l(nu, 1.0)

    def test_negative_argument(self):
        with pytest.raises(DomainError):
            struve_l(0.0, -1.0)

    def test_overflow_guard(self):
        with pytest.raises(StruveOverflowError):
            struve_l(0.0, 691.0)
        assert math.isfinite(struve_l(0.0, 690.0))

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError):
            struve_l(0.0, 50.0, SeriesConfig(max_terms=5))

    def test_half_order_closed_form(self):
        # L_{1/2}(x) = sqrt(2/(pi x)) (cosh x - 1)
        for x in (0.3, 2.0, 17.0, 80.0):
            assert rel(struve_l(0.5, x), math.sqrt(2 / (math.pi * x)) * (math.cosh(x) - 1)) <= 1e-14

    def test_thread_safety(self):
        pts = [(nu, x) for nu in (0.0, 1.5, 4.0) for x in (0.5, 5.0, 50.0)]
        serial = [struve_l(*p) for p in pts]
        with ThreadPoolExecutor(8) as ex:
            parallel = list(ex.map(lambda p: struve_l(*p), pts * 4))
        assert parallel == serial * 4

    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=-1.49, max_value=10.0), st.floats(min_value=1e-3, max_value=100.0))
    def test_against_mpmath(self, nu, x):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        assert rel(struve_l(nu, x), float(mp.struvel(nu, x))) <= 1e-13

    @given(st.floats(min_value=-1.49, max_value=20.0), st.floats(min_value=1e-6, max_value=300.0))
    def test_positive(self, nu, x):
        assert struve_l(nu, x) > 0

    @settings(max_examples=200)
    @given(st.floats(min_value=0.5, max_value=15.0), st.floats(min_value=1e-3, max_value=200.0))
    def test_monotone_in_order(self, nu, x):
        # at nu = 1/2 the gap is sqrt(2/(pi x)) (1 - e^-x), below one ulp of L once x > ~36
        if x <= 30:
            assert struve_l(nu, x) < struve_l(nu - 1, x)
        else:
            assert struve_l(nu, x) <= struve_l(nu - 1, x) * (1 + 1e-14)

    @settings(max_examples=200)
    @given(st.floats(min_value=-0.49, max_value=10.0), st.floats(min_value=1e-2, max_value=100.0))
    def test_recurrence(self, nu, x):
        lhs = struve_l(nu - 1, x) - struve_l(nu + 1, x)
        rhs = 2 * nu / x * struve_l(nu, x) + (x / 2) ** nu / (math.sqrt(math.pi) * math.gamma(nu + 1.5))
        assert abs(lhs - rhs) <= 1e-10 * struve_l(nu - 1, x)

    @pytest.mark.parametrize("nu", [-0.25, 0.5, 2.0, 7.0])
    @pytest.mark.parametrize("x", [0.2, 3.0, 40.0])
    def test_derivative(self, nu, x):
        h = 1e-5 * x
        g = lambda t: t ** nu * struve_l(nu, t)
        fd = (g(x + h) - g(x - h)) / (2 * h)
        assert rel(fd, x ** nu * struve_l(nu - 1, x)) <= 1e-6


class TestAsymptotics:
    def test_small_x_value(self):
        assert struve_l_small_x(0.0, 1.0) == pytest.approx(2 / math.pi, rel=1e-15)

    def test_small_x_nu1(self):
        approx = struve_l_small_x(1.0, 0.01)
        assert approx == pytest.approx(2.1220659078919378e-05, rel=1e-14)
        assert abs(approx / L_REF[(1.0, 0.01)] - 1) < 1e-4

    @pytest.mark.parametrize("x,tol", [(1e-3, 1e-2), (1e-4, 1e-3)])
    @pytest.mark.parametrize("nu", [-1.25, 0.0, 3.0])
    def test_small_x_ratio(self, nu, x, tol):
        assert abs(struve_l(nu, x) / struve_l_small_x(nu, x) - 1) < tol

    def test_large_x_value(self):
        assert struve_l_large_x(1.0) == pytest.approx(math.e / math.sqrt(2 * math.pi), rel=1e-15)

    # The leading term carries a 1 - (4 nu^2 - 1)/(8x) correction: 0.876 at nu=5, x=100,
    # so a 10% band at x=100 and 5% agreement at x=200 cannot hold for nu=5.
    ORDER_TOO_LARGE = pytest.mark.xfail(strict=True, reason="first-order correction exceeds the band at nu=5")

    @pytest.mark.parametrize("nu", [0.0, 1.0, 2.5, pytest.param(5.0, marks=ORDER_TOO_LARGE)])
    def test_large_x_ratio(self, nu):
        assert 0.9 < struve_l(nu, 100.0) / struve_l_large_x(100.0) < 1.1

    @pytest.mark.parametrize("orders", [(0.0, 1.0), pytest.param((0.0, 1.0, 5.0), marks=ORDER_TOO_LARGE)])
    def test_large_x_order_independent(self, orders):
        ratios = [struve_l(nu, 200.0) / struve_l_large_x(200.0) for nu in orders]
        assert max(ratios) / min(ratios) < 1.05

    @pytest.mark.parametrize("nu", [0.0, 1.0, 2.5, 5.0])
    @pytest.mark.parametrize("x", [100.0, 200.0, 400.0])
    def test_large_x_first_correction(self, nu, x):
        ratio = struve_l(nu, x) / struve_l_large_x(x)
        predicted = 1 - (4 * nu * nu - 1) / (8 * x)
        # remaining error is O(nu^4 / x^2)
        assert abs(ratio - predicted) < (1 + nu ** 4) / x ** 2

    def test_large_x_overflow(self):
        with pytest.raises(StruveOverflowError):
            struve_l_large_x(710.0)


class TestHypergeometric:
    def test_zero_argument(self):
        assert hyp_pfq([1.0, 1.0], [1.5, 1.5, 2.0], 0.0) == 1.0
        assert hyp_pfq([3.7], [-0.5, 9.0], 0.0) == 1.0

    def test_1f2_oracle(self):
        assert rel(hyp_pfq([1.0], [1.5, 1.5], 0.25), 1.1156473876023437796) <= 1e-14

    def test_2f3_oracle(self):
        assert rel(hyp_pfq([1.0, 1.0], [1.5, 1.5, 2.0], 25.0), 93.95791418824066261) <= 1e-14

    def test_terminating(self):
        # 1F2(-2; 1, 1; z) = 1 - 2z + z^2/4
        assert hyp_pfq([-2.0], [1.0, 1.0], 1.0) == pytest.approx(-0.75, rel=1e-15)

    @pytest.mark.parametrize("b", [[0.0, 1.0], [1.5, -2.0]])
    def test_bad_denominator(self, b):
        with pytest.raises(DomainError, match="non-positive integer"):
            hyp_pfq([1.0], b, 1.0)

    def test_negative_argument(self):
        with pytest.raises(DomainError):
            hyp_pfq([1.0], [1.5, 1.5], -1.0)

    def test_p_greater_than_q(self):
        with pytest.raises(DomainError):
            hyp_pfq([1.0, 1.0], [1.5], 0.5)


class TestRepresentation:
    def test_nu0_x1(self):
        assert rel(struve_l_via_1f2(0.0, 1.0), L_REF[(0.0, 1.0)]) <= 1e-14

    def test_nu_half_x2(self):
        assert rel(struve_l_via_1f2(0.5, 2.0), struve_l(0.5, 2.0)) <= 1e-12

    def test_small_x_leading_term(self):
        x = 1e-8
        assert struve_l_via_1f2(0.0, x) / struve_l_small_x(0.0, x) == pytest.approx(1.0, rel=1e-14)

    @given(st.floats(min_value=-1.49, max_value=10.0), st.floats(min_value=1e-3, max_value=100.0))
    def test_matches_series(self, nu, x):
        assert rel(struve_l_via_1f2(nu, x), struve_l(nu, x)) <= 1e-12


@pytest.mark.parametrize("kwargs", [{"rel_tol": 0.0}, {"max_terms": 0}, {"trailing_small": 0}])
def test_series_config_validation(kwargs):
    with pytest.raises(ValueError):
        SeriesConfig(**kwargs)
