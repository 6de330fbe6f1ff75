import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cesarolab.bernoulli import (
    bernoulli_number,
    bernoulli_poly,
    bernoulli_poly_coeffs,
    periodic_bernoulli,
    power_sum_poly,
    power_sum_value,
    zeta_nonpositive_int,
)
from cesarolab.exactnum import GaussianRational


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(6) == Fraction(1, 42)
    assert bernoulli_number(7) == 0
    for n in range(1, 20):
        assert bernoulli_number(2 * n + 1) == 0


def test_generating_function():
    # t/(e^t - 1) = sum B_n t^n / n!
    for t in (0.1, 0.5):
        series = sum(
            float(bernoulli_number(n)) * t**n / math.factorial(n) for n in range(21)
        )
        assert abs(t / (math.exp(t) - 1) - series) < 1e-12


def test_bernoulli_poly_values():
    assert bernoulli_poly(1, Fraction(0)) == Fraction(-1, 2)
    assert bernoulli_poly(3, 0) == 0
    assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
    # floating evaluation agrees with the exact one
    assert abs(bernoulli_poly(5, 0.3) - float(bernoulli_poly(5, Fraction(3, 10)))) < 1e-14


def test_bernoulli_poly_endpoint_symmetry():
    for n in range(2, 12):
        assert bernoulli_poly(n, Fraction(0)) == bernoulli_number(n)
        assert bernoulli_poly(n, Fraction(1)) == bernoulli_number(n)
        p = bernoulli_poly_coeffs(n)
        assert p.degree == n
        assert p.coeffs[-1].re == 1  # monic


@given(st.integers(2, 8), st.fractions(min_value=-100, max_value=100, max_denominator=50))
def test_forward_difference_identity(n, x):
    # B_n(x+1) - B_n(x) = n x^(n-1)
    assert bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * x ** (n - 1)


def test_periodic_bernoulli():
    assert periodic_bernoulli(1, 2.75) == pytest.approx(0.25)
    assert periodic_bernoulli(1, 3.0) == 0.0
    for x in (0.13, 1.89, 7.5):
        assert periodic_bernoulli(2, x + 1) == pytest.approx(periodic_bernoulli(2, x))


def test_power_sum_polys():
    b1 = power_sum_poly(1)
    assert b1.coeffs == (GaussianRational(Fraction(0)), GaussianRational(Fraction(1)))
    b2 = power_sum_poly(2)
    assert [c.re for c in b2.coeffs] == [0, Fraction(1, 2), Fraction(1, 2)]
    b3 = power_sum_poly(3)
    assert b3(GaussianRational(Fraction(3))).re == 14


def test_power_sum_matches_bruteforce():
    for n in range(1, 7):
        p = power_sum_poly(n)
        for k in range(1, 11):
            assert p(GaussianRational(Fraction(k))).re == power_sum_value(n, k)


def test_derivative_relation():
    # d/dk b_n(k) = (n-1) * (b_{n-1}(k) - zeta(2-n)) as exact polynomials
    for n in (2, 3, 4, 5):
        bn = power_sum_poly(n)
        deriv_coeffs = [
            GaussianRational(Fraction(i)) * bn.coeffs[i] for i in range(1, len(bn.coeffs))
        ]
        from cesarolab.exactnum import Poly

        deriv = Poly(deriv_coeffs)
        rhs = power_sum_poly(n - 1)
        zeta_val = zeta_nonpositive_int(n - 2)
        rhs_coeffs = list(rhs.coeffs) + [GaussianRational(Fraction(0))] * 3
        rhs_coeffs[0] = rhs_coeffs[0] - GaussianRational(zeta_val)
        rhs_poly = Poly(rhs_coeffs).scale(GaussianRational(Fraction(n - 1)))
        assert deriv == rhs_poly


def test_even_bernoulli_vs_zeta():
    # B_{2n} = -2n * zeta(-2n+1)
    for n in range(1, 5):
        assert bernoulli_number(2 * n) == -2 * n * zeta_nonpositive_int(2 * n - 1)


def test_exact_zeta_values():
    assert zeta_nonpositive_int(0) == Fraction(-1, 2)
    assert zeta_nonpositive_int(1) == Fraction(-1, 12)
    assert zeta_nonpositive_int(2) == 0
    assert zeta_nonpositive_int(3) == Fraction(1, 120)


def test_large_cache():
    # numerators grow quickly; exact arithmetic must keep up
    b200 = bernoulli_number(200)
    assert b200.denominator > 1
    assert abs(b200.numerator) > 10**200
