import cmath
import math
from fractions import Fraction

import pytest

from cesarolab.exactnum import EULER_GAMMA
from cesarolab.special import (
    EulerMaclaurinConfig,
    PoleError,
    digamma,
    gamma_fn,
    gamma_remainder_constant,
    hurwitz_special_value_sums,
    hurwitz_zeta,
    lngamma,
    polygamma,
    renormalized_harmonic_series,
    rgamma,
    stirling_J,
    stirling_residual,
    stirling_two_sided_residual,
    verify_duplication,
    verify_functional_equations,
    verify_hurwitz_duplication,
    verify_lemma2,
    zeta,
    zeta_prime,
)

HALF_LN_2PI = 0.5 * math.log(2 * math.pi)


class TestZeta:
    def test_special_values(self):
        assert abs(zeta(2) - math.pi**2 / 6) < 1e-12
        assert abs(zeta(0) + 0.5) < 1e-14
        assert abs(zeta(-1) + Fraction(1, 12)) < 1e-12
        assert abs(zeta(-2)) < 1e-10

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta(1)

    def test_self_consistency_doubling_cutoff(self):
        cfg_a = EulerMaclaurinConfig(cutoff=50)
        cfg_b = EulerMaclaurinConfig(cutoff=100)
        for re in (-10, -4, 0, 2, 7, 10):
            for im in (0, 3, 17, 30):
                s = complex(re, im)
                if s == 1:
                    continue
                za, zb = zeta(s, cfg_a), zeta(s, cfg_b)
                assert abs(za - zb) < cfg_a.target_tol * (1 + abs(zb)), s


class TestZetaPrime:
    def test_at_zero(self):
        assert abs(zeta_prime(0) + HALF_LN_2PI) < 1e-8

    def test_ratio_at_half(self):
        closed = -EULER_GAMMA / 2 - math.pi / 4 - 1.5 * math.log(2) - 0.5 * math.log(math.pi)
        assert abs(closed - (-2.6860917)) < 1e-7
        assert abs(-zeta_prime(0.5) / zeta(0.5) - closed) < 1e-8

    def test_prime_sum_oracle(self):
        from cesarolab.rootid import zeta_deriv_side

        side = zeta_deriv_side(2.0, 1.0, prime_bound=10**6)
        assert abs(-zeta_prime(2) / zeta(2) - side.value) < 1e-8


class TestHurwitz:
    def test_zero_shift(self):
        for s in (2.0, -3.0, 0.5 + 2j):
            assert abs(hurwitz_zeta(0, s) - zeta(s)) < 1e-12

    def test_unit_shift(self):
        assert abs(hurwitz_zeta(1, 2) - (zeta(2) - 1)) < 1e-13

    def test_partial_sum_relation(self):
        # zeta(s) - zeta_H(z, s) = sum_{j<=z} j^-s; at z=3, s=-2 this is 14
        assert abs(zeta(-2) - hurwitz_zeta(3, -2) - 14) < 1e-9

    def test_singular_shift(self):
        with pytest.raises(PoleError):
            hurwitz_zeta(-2, 3.0)

    def test_duplication(self):
        for n in (2, 3):
            assert verify_hurwitz_duplication(n, 0.37, 2.2) < 1e-8
            assert verify_hurwitz_duplication(n, -0.2 + 0.1j, 3.0 - 1.0j) < 1e-8


class TestRemainderConstant:
    def test_c_zero(self):
        assert abs(gamma_remainder_constant(0) - HALF_LN_2PI) < 1e-9

    def test_c_one_equals_c_zero(self):
        # C_0 - C_1 = ln Gamma(2) = 0
        assert abs(gamma_remainder_constant(1) - gamma_remainder_constant(0)) < 1e-10

    def test_c_three(self):
        assert abs(
            gamma_remainder_constant(3) - (gamma_remainder_constant(0) - math.log(6))
        ) < 1e-10

    def test_pole(self):
        with pytest.raises(PoleError):
            gamma_remainder_constant(-2)


class TestLnGamma:
    def test_factorials(self):
        for k in range(0, 11):
            assert abs(lngamma(k) - math.lgamma(k + 1)) < 1e-10 * (1 + abs(math.lgamma(k + 1)))

    def test_zero(self):
        assert lngamma(0) == 0

    def test_half(self):
        assert abs(lngamma(-0.5) - 0.5 * math.log(math.pi)) < 1e-10

    def test_reflection_consistency_random_points(self):
        import random

        rng = random.Random(7)
        for _ in range(10):
            z = complex(rng.uniform(0.05, 0.95), rng.uniform(-2, 2))
            resid = abs(gamma_fn(z) * gamma_fn(1 - z) * cmath.sin(math.pi * z) / math.pi - 1)
            assert resid < 1e-8, z

    def test_rgamma_zeros_at_poles(self):
        assert rgamma(0) == 0
        assert rgamma(-3) == 0
        assert abs(rgamma(4) - 1 / 6) < 1e-12


class TestStirling:
    def test_coefficients(self):
        # J(z) = 1/(12 z) - 1/(360 z^3) + ...
        assert abs(stirling_J(1.0, 1) - 1 / 12) < 1e-15
        assert abs(stirling_J(1.0, 2) - (1 / 12 - 1 / 360)) < 1e-15
        assert stirling_J(3.0, 0) == 0

    def test_against_lngamma(self):
        assert stirling_residual(10, 3) < 1e-9

    def test_decreasing(self):
        residuals = [stirling_residual(z, 3) for z in (10, 20, 40)]
        assert residuals[0] < 1e-9
        assert residuals[1] < residuals[0] or residuals[1] < 1e-11
        assert residuals[2] < 1e-11

    def test_two_sided(self):
        r1 = stirling_two_sided_residual(-20.3, 3)
        r2 = stirling_two_sided_residual(-40.3, 3)
        assert r1 < 1e-6
        assert r2 < r1


class TestDuplication:
    def test_real_point(self):
        assert verify_duplication(0.7, 2) < 1e-9

    def test_complex_point(self):
        assert verify_duplication(0.3 + 0.4j, 3) < 1e-9

    def test_integer_point(self):
        assert verify_duplication(5, 2) < 1e-9


class TestFunctionalEquations:
    def test_gamma_side(self):
        g, _ = verify_functional_equations(0.3)
        assert g < 1e-9

    def test_zeta_side(self):
        _, z = verify_functional_equations(0.4)
        assert z < 1e-8

    def test_zeta_value_consistency(self):
        # at s = 2 the equation yields zeta(-1) = -1/12
        rhs = 2 ** (1 - 2) * math.pi ** (-2) * math.cos(math.pi) * gamma_fn(2) * zeta(2)
        assert abs(rhs + Fraction(1, 12)) < 1e-12


class TestLemma2:
    def test_nonpositive_integer(self):
        assert verify_lemma2(-2) < 1e-8

    def test_positive(self):
        assert verify_lemma2(3) < 1e-6

    def test_complex(self):
        assert verify_lemma2(2 + 1j) < 1e-6

    def test_pole(self):
        with pytest.raises(PoleError):
            verify_lemma2(1)


class TestShiftedSums:
    def test_p2(self):
        check = hurwitz_special_value_sums(2, 2)
        assert check.residual_full < 1e-10

    def test_p3(self):
        check = hurwitz_special_value_sums(3, 3)
        assert check.residual_full < 1e-8
        # the narrower summation convention does not satisfy the identity
        assert check.residual_inner > 1.0

    def test_s0_consistency(self):
        # target (p^0 - 1) zeta(0) = 0
        check = hurwitz_special_value_sums(3, 0)
        assert check.residual_full < 1e-10


class TestDigammaFamily:
    def test_renormalized_series_vs_digamma(self):
        for z0 in (0.5, 2.3):
            series = renormalized_harmonic_series(z0)
            assert abs(series - (-digamma(z0 + 1))) < 1e-8

    def test_renormalized_series_vs_lngamma_derivative(self):
        # five-point stencil derivative of lngamma as an independent check
        for z0 in (0.5, 2.3):
            h = 1e-2
            d = (
                -lngamma(z0 + 2 * h)
                + 8 * lngamma(z0 + h)
                - 8 * lngamma(z0 - h)
                + lngamma(z0 - 2 * h)
            ) / (12 * h)
            assert abs(renormalized_harmonic_series(z0) - (-d)) < 1e-8

    def test_polygamma_values(self):
        assert abs(polygamma(1, 1) - math.pi**2 / 6) < 1e-12
        assert abs(digamma(1) + EULER_GAMMA) < 1e-13
        assert abs(digamma(0.25) - (-EULER_GAMMA - math.pi / 2 - 3 * math.log(2))) < 1e-12
