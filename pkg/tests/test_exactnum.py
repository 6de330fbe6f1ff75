import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesarolab.exactnum import (
    BasisError,
    ConstCombo,
    GaussianRational,
    MON_A,
    MON_GAMMA,
    MON_LN2,
    MON_ONE,
    MON_PI,
    MON_PI_INV,
    NEG_INF,
    Poly,
    combo_B,
    combo_C1,
    combo_D,
    combo_sub,
    const_combo_eval,
    format_rational,
    parse_combo,
    parse_gaussian,
    parse_poly,
    parse_rational,
    rational_arith,
)

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)
gaussians = st.builds(GaussianRational, fractions, fractions)


def test_rational_arith_examples():
    assert rational_arith(Fraction(1, 6), Fraction(-1, 30), "add") == Fraction(2, 15)
    assert rational_arith(Fraction(1, 2), Fraction(1, 2), "mul") == Fraction(1, 4)
    assert rational_arith(Fraction(-1, 12), Fraction(1, 2), "div") == Fraction(-1, 6)


def test_rational_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rational_arith(Fraction(1), Fraction(0), "div")


@given(fractions, fractions, fractions)
def test_rational_ring_axioms(a, b, c):
    assert rational_arith(rational_arith(a, b, "add"), c, "add") == rational_arith(
        a, rational_arith(b, c, "add"), "add"
    )
    assert rational_arith(a, rational_arith(b, c, "add"), "mul") == rational_arith(
        rational_arith(a, b, "mul"), rational_arith(a, c, "mul"), "add"
    )


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_gaussian_division_roundtrip():
    x = GaussianRational(Fraction(3, 4), Fraction(-2, 5))
    y = GaussianRational(Fraction(1, 3), Fraction(7))
    assert (x / y) * y == x


@given(fractions)
def test_rational_parse_print_roundtrip(a):
    assert parse_rational(format_rational(a)) == a


@given(gaussians)
def test_gaussian_parse_print_roundtrip(g):
    assert parse_gaussian(str(g)) == g


def test_poly_basics():
    p = Poly(
        [
            GaussianRational(Fraction(-1, 12)),
            GaussianRational(Fraction(-1, 2)),
            GaussianRational(Fraction(-1, 2)),
        ]
    )
    assert p.degree == 2
    assert Poly().degree == NEG_INF
    q = parse_poly(str(p))
    assert q == p


@given(st.lists(gaussians, max_size=5), st.lists(gaussians, max_size=5))
@settings(max_examples=50)
def test_poly_mul_commutes(a, b):
    pa, pb = Poly(a), Poly(b)
    assert pa * pb == pb * pa


def test_poly_parse_roundtrip_zero():
    assert parse_poly(str(Poly())) == Poly()


# -- constant combinations ---------------------------------------------------


def test_c1_numeric_projection():
    c1 = combo_C1()
    val = const_combo_eval(c1, A_value=-0.104)
    expected = 5 / 32 + (17 / 48) * math.log(2) + 2 * (-0.104)
    assert abs(val - expected) < 1e-14
    assert abs(val - 0.19371) < 1e-4


def test_D_is_pure_rational():
    d = combo_D()
    assert d.is_rational()
    assert d.rational_part().re == Fraction(-1, 48)
    assert abs(const_combo_eval(d, A_value=123.0) - (-1 / 48)) < 1e-15


def test_empty_combo_evaluates_to_zero():
    assert const_combo_eval(ConstCombo(), A_value=0.5) == 0


def test_combo_sub_cancellations():
    # the ln2- and A-parts of 2B - 2C1 cancel identically, leaving -1/24,
    # so D = 1/48 - 2C1 + 2B = -1/48
    two_b_minus_two_c1 = combo_sub(2 * combo_B(), 2 * combo_C1())
    assert two_b_minus_two_c1 == ConstCombo.rational(Fraction(-1, 24))
    x = combo_C1()
    assert combo_sub(x, x).is_zero()
    assert combo_sub(combo_B(), combo_C1()) == ConstCombo.rational(Fraction(-1, 48))


def test_combo_multiplication_stays_in_basis():
    pi = ConstCombo({MON_PI: 1})
    inv = ConstCombo({MON_PI_INV: 1})
    assert pi * inv == ConstCombo.rational(1)
    with pytest.raises(BasisError):
        _ = pi * pi
    ln2 = ConstCombo({MON_LN2: 1})
    with pytest.raises(BasisError):
        _ = ln2 * ln2


small_combos = st.builds(
    lambda a, b, c, d: ConstCombo({MON_ONE: a, MON_LN2: b, MON_A: c, MON_GAMMA: d}),
    fractions,
    fractions,
    fractions,
    fractions,
)


@given(small_combos, small_combos)
@settings(max_examples=60)
def test_eval_is_additive(x, y):
    lhs = const_combo_eval(x + y, A_value=-0.104)
    rhs = const_combo_eval(x, A_value=-0.104) + const_combo_eval(y, A_value=-0.104)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))


@given(small_combos)
def test_combo_parse_print_roundtrip(x):
    assert parse_combo(str(x)) == x


def test_reporting_basis_guard():
    from cesarolab.exactnum import MON_LNPI

    c = ConstCombo({MON_LNPI: 1})
    with pytest.raises(BasisError):
        c.assert_reporting_basis()
    combo_D().assert_reporting_basis()
