import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesarolab.cesaro import (
    ClimResult,
    EigenTemplate,
    KAlphaPoly,
    StepFunction,
    TemplateDegenerateError,
    average,
    clim_monomial,
    clim_poly,
    default_power_template,
    dilate,
    discrete_phase_mean,
    faulhaber_template,
    numeric_clim,
    sample_k_alpha_monomial,
)


def unit_staircase(n=10000):
    pos = np.arange(1, n + 1, dtype=float)
    return StepFunction.from_increments(pos, np.ones(n, dtype=complex))


def test_clim_monomial_cited_values():
    assert clim_monomial(1, 0) == Fraction(-1, 2)
    assert clim_monomial(0, 2) == Fraction(1, 3)
    assert clim_monomial(1, 2) == Fraction(-1, 4)
    assert clim_monomial(2, 1) == Fraction(1, 4)


def test_clim_monomial_numeric_cross_check():
    f = sample_k_alpha_monomial(2, 1, 10000)
    res = numeric_clim(f, default_power_template(2), depth=3)
    assert abs(res.value - 0.25) < 1e-2
    assert res.converged


def test_clim_poly_ledger_pieces():
    # -1/2 k a^2 + 1/2 k a - 1/12 k + (-1/3 a^3 + 1/8 a^2 + 1/8 a) -> 1/48
    p = KAlphaPoly(
        {
            (1, 2): Fraction(-1, 2),
            (1, 1): Fraction(1, 2),
            (1, 0): Fraction(-1, 12),
            (0, 3): Fraction(-1, 3),
            (0, 2): Fraction(1, 8),
            (0, 1): Fraction(1, 8),
        }
    )
    assert clim_poly(p).re == Fraction(1, 48)
    q = KAlphaPoly({(0, 1): Fraction(1, 2), (0, 2): Fraction(-1, 2)})
    assert clim_poly(q).re == Fraction(1, 12)
    assert clim_poly(KAlphaPoly()).is_zero()


@given(
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.fractions(min_value=-100, max_value=100, max_denominator=50),
        max_size=6,
    ),
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.fractions(min_value=-100, max_value=100, max_denominator=50),
        max_size=6,
    ),
)
@settings(max_examples=40)
def test_clim_poly_additive(d1, d2):
    p, q = KAlphaPoly(d1), KAlphaPoly(d2)
    assert clim_poly(p + q) == clim_poly(p) + clim_poly(q)


def test_average_examples():
    f = unit_staircase(100)
    k, alpha = 40, 0.25
    t = k + alpha
    # staircase integral: sum_{j<=k} (t - j) = k t - k(k+1)/2
    assert average(f, t) == pytest.approx((k * t - k * (k + 1) / 2) / t)
    const = StepFunction([1.0], [3.0 + 1.0j], initial=3.0 + 1.0j)
    assert average(const, 50.0) == pytest.approx(3.0 + 1.0j)
    single = StepFunction([1.0], [1.0], initial=0.0)
    assert average(single, 2.0) == pytest.approx(0.5)


def test_average_linear_and_fixes_constants():
    f = unit_staircase(50)
    g = StepFunction(f.positions, 2.5 * f.values, initial=0.0)
    t = 33.7
    assert average(g, t) == pytest.approx(2.5 * average(f, t))


def test_average_requires_point_beyond_start():
    f = unit_staircase(10)
    with pytest.raises(ValueError):
        average(f, 0.0)


def test_grandi_series():
    n = 10000
    pos = np.arange(1, n + 1, dtype=float)
    incs = np.array([(-1) ** (j - 1) for j in range(1, n + 1)], dtype=complex)
    f = StepFunction.from_increments(pos, incs)
    res = numeric_clim(f, (), depth=1)
    assert res.converged
    assert abs(res.value - 0.5) < 1e-3


def test_log_partial_sums_reach_half_log_two_pi():
    n = 40000
    pos = np.arange(1, n + 1, dtype=float)
    f = StepFunction.from_increments(pos, np.log(pos).astype(complex))
    res = numeric_clim(
        f, [(1.0, 1), (1.0, 0), (0.0, 1)], extended_precision=True
    )
    assert res.converged
    assert abs(res.value - 0.5 * math.log(2 * math.pi)) < 1e-3


def test_unit_staircase_gives_zeta_zero():
    res = numeric_clim(unit_staircase(), [(1.0, 0)])
    assert res.converged
    assert abs(res.value - (-0.5)) < 1e-3


def test_known_coefficient_subtraction():
    # the unit staircase is floor(t); its linear part has exactly slope 1
    res = numeric_clim(unit_staircase(), [(1.0, 0)], coefficients=[1.0], depth=2)
    assert abs(res.value - (-0.5)) < 1e-3


def test_pure_log_divergence_flagged():
    n = 10000
    pos = np.arange(1, n + 1, dtype=float)
    f = StepFunction.from_increments(pos, (1.0 / pos).astype(complex))
    res = numeric_clim(f, (), depth=2)
    assert not res.converged


def test_dilate():
    f = StepFunction([2.0, 4.0, 6.0], [1.0, 2.0, 3.0])
    g = dilate(f, 0.5)
    assert np.allclose(g.positions, [1.0, 2.0, 3.0])
    assert np.allclose(g.values, f.values)
    h = dilate(f, 1.0)
    assert np.allclose(h.positions, f.positions)
    with pytest.raises(ValueError):
        dilate(f, 0.0)


def test_numeric_clim_dilation_invariance():
    f = unit_staircase()
    base = numeric_clim(f, [(1.0, 0)])
    for r in (0.5, 2.0):
        res = numeric_clim(dilate(f, r), [(1.0, 0)])
        assert abs(res.value - base.value) < 2e-3


def test_template_validation():
    with pytest.raises(ValueError):
        EigenTemplate([(0.0, 0)])
    with pytest.raises(ValueError):
        EigenTemplate([(1.0, 0), (1.0, 0)])
    with pytest.raises(ValueError):
        EigenTemplate([(-2.0, 0)])


def test_degenerate_template_rejected():
    f = unit_staircase(2000)
    with pytest.raises(TemplateDegenerateError):
        numeric_clim(f, [(1.0, 0), (1.0 + 1e-12, 0)])


def test_fit_window_needs_enough_jumps():
    f = StepFunction([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        numeric_clim(f, [(1.0, 0), (2.0, 0)], fit_window=0.2)


def test_monomial_oracle_low_degrees():
    # Definition-1 engine vs the closed form, n <= 2 across all r
    for n in range(0, 3):
        for r in range(0, 5):
            f = sample_k_alpha_monomial(n, r, 10000)
            res = numeric_clim(f, default_power_template(n), depth=n + 1)
            assert abs(res.value - float(clim_monomial(n, r))) < 1e-2, (n, r)


def test_faulhaber_template_construction():
    # unit integrals k -> continuous polynomial x (Bernoulli B_1 shift)
    assert faulhaber_template([Fraction(0), Fraction(1)]) == [Fraction(1)]
    # unit integrals k^2 -> x^2 - x (from B_2)
    assert faulhaber_template([0, 0, Fraction(1)]) == [Fraction(-1), Fraction(1)]


def test_discrete_phase_mean():
    assert discrete_phase_mean(0, 8) == 1
    assert discrete_phase_mean(1, 8) == Fraction(1, 2)
    assert discrete_phase_mean(2, 8) == Fraction(85, 256)


def test_step_function_csv_roundtrip(tmp_path):
    f = StepFunction([1.0, 2.5], [1.0 + 2.0j, -0.5j], initial=0.25)
    path = tmp_path / "steps.csv"
    f.to_csv(path)
    g = StepFunction.from_csv(path)
    assert np.allclose(g.positions, f.positions)
    assert np.allclose(g.values, f.values)
    assert g.initial == f.initial


def test_step_function_validation():
    with pytest.raises(ValueError):
        StepFunction([2.0, 1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        StepFunction([], [])
    with pytest.raises(ValueError):
        StepFunction([0.0, 1.0], [1.0, 2.0])
