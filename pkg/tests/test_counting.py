import math
from fractions import Fraction

import numpy as np
import pytest

from cesarolab import counting
from cesarolab.exactnum import ConstCombo, combo_B, combo_C1


def gauss_integral(f, a, b, n=80):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (b - a) * nodes + 0.5 * (a + b)
    return 0.5 * (b - a) * sum(w * f(float(xi)) for xi, w in zip(x, weights))


class TestNCheck:
    def test_at_two_pi(self):
        assert counting.N_check(2 * math.pi) == pytest.approx(-0.125)

    def test_at_hundred(self):
        # u(ln u - 1) = 28.127 at T = 100; the closed form adds 7/8,
        # consistent with the actual count N(100) = 29
        assert counting.N_check(100) == pytest.approx(28.127 + 0.875, abs=1e-2)

    def test_small_T_limit(self):
        # T ln T -> 0, so N_check -> 7/8 from below-ish values
        assert counting.N_check(1e-12) == pytest.approx(7 / 8, abs=1e-9)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            counting.N_check(0.0)

    def test_antiderivative(self):
        q = gauss_integral(counting.N_check, 1e-9, 30.0)
        assert counting.N_check_1(30.0) == pytest.approx(q, abs=1e-6)


class TestDelta0:
    def test_leading_coefficient(self):
        assert 48 * 100 * counting.delta0(100.0) == pytest.approx(1.0, abs=1e-3)

    def test_T5_residual_decreasing(self):
        resid = [
            T**5 * abs(counting.delta0(T) - counting.delta0_asymptotic(T, 3))
            for T in (20.0, 40.0, 80.0)
        ]
        assert resid[0] > resid[1] > resid[2]

    def test_two_method_agreement(self):
        # adaptive (composite Gauss) quadrature oracle for the sawtooth integral
        def delta0_quad(T, J=3000):
            c2 = (T / 2.0) ** 2
            nodes, weights = np.polynomial.legendre.leggauss(12)
            total = 0.0
            for j in range(J):
                x = 0.5 * nodes + (j + 0.5)
                fx = (0.5 - (x - j)) / ((x + 0.25) ** 2 + c2)
                total += 0.5 * np.sum(weights * fx)
            w = J + 0.25
            total += (1.0 / 12.0) / (w * w + c2)
            closed = T / 4 * math.log1p(1 / (4 * T * T)) + 0.25 * math.atan2(1.0, 2 * T)
            return closed - T / 2 * total

        for T in (0.5, 1.0, 5.0, 20.0):
            assert abs(counting.delta0(T) - delta0_quad(T)) < 1e-9, T


class TestDelta12:
    def test_delta1_asymptotic(self):
        assert abs(counting.delta1(200.0) - counting.delta1_asymptotic(200.0)) < 1e-4

    def test_delta1_equals_integral_of_delta0(self):
        q = gauss_integral(counting.delta0, 1e-9, 10.0)
        assert abs(counting.delta1(10.0) - q) < 1e-6

    def test_delta2_equals_integral_of_delta1(self):
        q = gauss_integral(counting.delta1, 1e-9, 10.0)
        assert abs(counting.delta2(10.0) - q) < 1e-6

    def test_delta2_residual_tracks_next_coefficient(self):
        A = counting.constant_A()
        B = 13 / 96 + 17 / 48 * math.log(2) + 2 * A
        for T in (50.0, 100.0):
            r = counting.delta2(T) - (T * math.log(T) / 48 + B * T - math.pi / 64)
            assert r * T == pytest.approx(7 / 11520, rel=0.2), T


class TestConstantA:
    def test_value(self):
        assert counting.constant_A() == pytest.approx(-0.104, abs=2e-3)

    def test_truncation_doubling(self):
        a1 = counting.constant_A.__wrapped__(100000)
        a2 = counting.constant_A.__wrapped__(200000)
        assert abs(a1 - a2) < 1e-6

    def test_gamma_piece(self):
        from cesarolab.exactnum import EULER_GAMMA

        assert EULER_GAMMA / 12 == pytest.approx(0.0481, abs=1e-4)


class TestCombos:
    def test_mu2_at_fifty(self):
        expected = -50 / 48 - math.pi / 32 + 21 / (5760 * 50)
        assert abs(counting.combo_mu2(50.0) - expected) < 1e-3

    def test_mu1_at_hundred(self):
        A = counting.constant_A()
        expected = -math.log(100) / 48 - (13 / 96 + 17 / 48 * math.log(2) + 2 * A)
        assert abs(counting.combo_mu1(100.0) - expected) < 1e-3

    def test_mu1_residual_coefficient(self):
        A = counting.constant_A()
        B = 13 / 96 + 17 / 48 * math.log(2) + 2 * A
        for T in (40.0, 80.0):
            r = counting.combo_mu1(T) - (-math.log(T) / 48 - B)
            assert r * T * T == pytest.approx(21 / 11520, rel=0.05), T


class TestDeltaAsymptotics:
    def test_series_coefficients(self):
        da = counting.delta_asymptotics()
        assert dict(da.delta0_series) == {
            -1: Fraction(1, 48),
            -3: Fraction(7, 5760),
            -5: Fraction(31, 80640),
        }
        assert da.delta1_log == Fraction(1, 48)
        assert da.delta1_const == combo_C1()
        assert da.delta2_t == combo_B()

    def test_mu1_combination_is_exact(self):
        m1 = counting.delta_asymptotics().mu1_combination()
        assert m1[(0, 1)] == ConstCombo.rational(Fraction(-1, 48))
        assert m1[(0, 0)] == -combo_B()
        assert m1[(-2, 0)] == ConstCombo.rational(Fraction(21, 11520))
        assert m1[(-4, 0)] == ConstCombo.rational(Fraction(155, 322560))
        assert (1, 1) not in m1  # T ln T cancels exactly

    def test_mu2_combination_is_exact(self):
        m2 = counting.delta_asymptotics().mu2_combination()
        # D = 1/48 - 2C1 + 2B collapses to -1/48: ln2 and A cancel
        assert m2[(1, 0)] == ConstCombo.rational(Fraction(-1, 48))
        assert m2[(0, 0)] == ConstCombo({(1, 0, 0, 0, 0): Fraction(-1, 32)})
        assert m2[(-1, 0)] == ConstCombo.rational(Fraction(21, 5760))
        assert m2[(-3, 0)] == ConstCombo.rational(Fraction(31, 48384))
        assert (1, 1) not in m2
