import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reduced_mi.logmath import clamp_cost, dm_log_binomial, log_binomial, log_factorial

mpmath.mp.dps = 40


def mp_log2_binomial(x, y):
    v = mpmath.gamma(x + 1) / (mpmath.gamma(y + 1) * mpmath.gamma(x - y + 1))
    return float(mpmath.log(v, 2))


def test_log_binomial_integer():
    assert log_binomial(4, 2) == pytest.approx(math.log2(6), abs=1e-12)
    for n in (0, 1, 7, 50):
        assert log_binomial(n, 0) == 0.0


def test_log_binomial_real_against_mpmath():
    expected = mp_log2_binomial(mpmath.mpf("5.5"), mpmath.mpf("2.5"))
    assert log_binomial(5.5, 2.5) == pytest.approx(expected, rel=1e-12)


def test_log_binomial_domain():
    with pytest.raises(ValueError, match="binomial out of domain"):
        log_binomial(2, 4)
    with pytest.raises(ValueError):
        log_binomial(-1.5, 0.5)


@pytest.mark.parametrize("x", [3, 17, 140, 999])
def test_log_binomial_matches_exact_integers(x):
    for y in (1, x // 3, x // 2, x - 1):
        exact = math.log2(math.comb(x, y))
        assert log_binomial(x, y) == pytest.approx(exact, rel=1e-10)


@given(st.floats(0.0, 200.0), st.floats(0.0, 1.0))
def test_log_binomial_symmetry(x, frac):
    y = x * frac
    assert log_binomial(x, y) == pytest.approx(log_binomial(x, x - y), abs=1e-9)


def test_pascal_recurrence():
    for x in range(2, 61):
        for y in range(1, x):
            lhs = 2.0 ** log_binomial(x, y)
            rhs = 2.0 ** log_binomial(x - 1, y) + 2.0 ** log_binomial(x - 1, y - 1)
            assert abs(lhs - rhs) / rhs <= 1e-8


def test_dm_log_binomial_examples():
    assert dm_log_binomial(0, 0.3) == 0.0
    assert dm_log_binomial(3, 1.0) == pytest.approx(0.0, abs=1e-14)
    # Gamma(2.5) / (Gamma(0.5) Gamma(3)) = 1.5 * 0.5 / 2
    assert dm_log_binomial(2, 0.5) == pytest.approx(math.log2(3 / 8), abs=1e-12)
    with pytest.raises(ValueError):
        dm_log_binomial(2, 0.0)


@given(st.integers(0, 500))
def test_dm_log_binomial_alpha_one_vanishes(k):
    assert abs(dm_log_binomial(k, 1.0)) < 1e-9


@given(st.integers(0, 300), st.floats(0.01, 50.0))
def test_dm_log_binomial_matches_general_form(k, alpha):
    expected = mp_log2_binomial(mpmath.mpf(k) + alpha - 1, mpmath.mpf(alpha) - 1)
    assert dm_log_binomial(k, alpha) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_log_factorial():
    assert log_factorial(0) == 0.0
    assert log_factorial(4) == pytest.approx(math.log2(24), rel=1e-12)
    assert log_factorial(20) == pytest.approx(math.log2(2432902008176640000), rel=1e-12)
    for k in (300, 5000, 10**6):
        assert log_factorial(k) == pytest.approx(float(mpmath.log(mpmath.factorial(k), 2)), rel=1e-10)


def test_clamp():
    assert clamp_cost(-5e-10) == 0.0
    assert clamp_cost(3.0) == 3.0
    assert clamp_cost(-0.5) == -0.5
