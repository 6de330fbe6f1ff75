"""The smooth pieces of the Riemann-von Mangoldt zero count:

    N(T) = Ncheck(T) + S(T) + delta(T)/pi

with Ncheck the explicit closed form, delta the boundary-correction term and
its antiderivatives delta1, delta2, the constant A (the generalized value of
integral (1/2 - {u}) ln(u + 1/4) du), and the combinations feeding the
first- and second-moment ledgers.

All improper integrals over the sawtooth are evaluated as per-unit-interval
closed forms (log/arctan antiderivatives) plus Euler-Maclaurin tail
corrections at the truncation index:

    integral_J^inf (1/2 - {u}) g(u) du = g(J)/12 - g''(J)/720 + O(g'''')
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactnum import (
    EULER_GAMMA,
    ConstCombo,
    MON_ONE,
    MON_PI,
    combo_B,
    combo_C1,
    combo_D,
)

TWO_PI = 2.0 * math.pi


def N_check(T: float) -> float:
    """(T/2pi) ln(T/2pi) - T/2pi + 7/8."""
    if T <= 0:
        raise ValueError("N_check needs T > 0")
    u = T / TWO_PI
    return u * math.log(u) - u + 7.0 / 8.0


def N_check_1(T: float) -> float:
    """integral_0^T N_check = 2pi { u^2 ln(u)/2 - 3 u^2/4 + 7 u/8 }, u=T/2pi."""
    if T <= 0:
        raise ValueError("N_check_1 needs T > 0")
    u = T / TWO_PI
    return TWO_PI * (0.5 * u * u * math.log(u) - 0.75 * u * u + 7.0 / 8.0 * u)


# ---------------------------------------------------------------------------
# Per-interval antiderivatives for the sawtooth integrals.
#
# On [j, j+1) the sawtooth factor is (1/2 - {u}) = (j + 3/4) - v with
# v = u + 1/4, so each integral needs antiderivatives of v^k * (base) over
# v in [j + 1/4, j + 5/4].
# ---------------------------------------------------------------------------


def _tail_em(g, J: float) -> float:
    """g(J)/12 - g''(J)/720 with a central-difference second derivative."""
    h = 0.5
    g2 = (g(J + h) - 2.0 * g(J) + g(J - h)) / (h * h)
    return g(J) / 12.0 - g2 / 720.0


def _interval_arrays(J: int):
    # extended precision: the final delta values multiply these sums by T/2,
    # so piece-level rounding must stay well below double eps
    j = np.arange(J, dtype=np.longdouble)
    lo = j + np.longdouble(0.25)
    hi = j + np.longdouble(1.25)
    k0 = j + np.longdouble(0.75)
    return j, lo, hi, k0


def _atan_diff(hi, lo, c):
    """arctan(hi/c) - arctan(lo/c), cancellation-free."""
    return np.arctan(c * (hi - lo) / (c * c + hi * lo))


def _atan_inv_diff(hi, lo, c):
    """arctan(c/hi) - arctan(c/lo), cancellation-free."""
    return np.arctan(c * (lo - hi) / (hi * lo + c * c))


def _ln_diff(hi, lo, c):
    """ln(hi^2+c^2) - ln(lo^2+c^2), cancellation-free."""
    return np.log1p((hi - lo) * (hi + lo) / (lo * lo + c * c))


def _sawtooth_integral_inverse_quadratic(c: float, J: int) -> float:
    """integral_0^inf (1/2-{u}) / ((u+1/4)^2 + c^2) du."""
    c_w = np.longdouble(c)
    _, lo, hi, k0 = _interval_arrays(J)
    pieces = (k0 / c_w) * _atan_diff(hi, lo, c_w) - 0.5 * _ln_diff(hi, lo, c_w)
    total = np.sum(pieces)

    def g(u):
        w = u + 0.25
        return 1.0 / (w * w + c * c)

    return float(total + _tail_em(g, float(J)))


def _log_ratio_pieces(c: float, lo, hi, k0):
    """Per-interval integrals of (k0 - v) [ln(v^2+c^2) - 2 ln v] dv.

    Grouped so that every endpoint quantity is already small:
    A1 - 2 A3 = v log1p(c^2/v^2) + 2 c arctan(v/c) and
    A2 - 2 A4 = v^2 log1p(c^2/v^2)/2 + c^2 ln(v^2+c^2)/2.
    """
    l_hi = np.log1p(c * c / (hi * hi))
    l_lo = np.log1p(c * c / (lo * lo))
    d1 = (hi * l_hi - lo * l_lo) + 2.0 * c * _atan_diff(hi, lo, c)
    d2 = 0.5 * (hi * hi * l_hi - lo * lo * l_lo) + 0.5 * c * c * _ln_diff(hi, lo, c)
    return k0 * d1 - d2


def _sawtooth_integral_log_ratio(c: float, J: int) -> float:
    """integral_0^inf (1/2-{u}) [ln((u+1/4)^2 + c^2) - 2 ln(u+1/4)] du."""
    c = np.longdouble(c)
    _, lo, hi, k0 = _interval_arrays(J)
    total = float(np.sum(_log_ratio_pieces(c, lo, hi, k0)))

    def g(u):
        w = u + 0.25
        return math.log1p(c * c / (w * w))

    return total + _tail_em(g, float(J))


def _sawtooth_integral_t_integrated(T: float, J: int) -> float:
    """integral_0^inf (1/2-{u}) G_T(u) du with
    G_T(u) = T [ln((u+1/4)^2 + c^2) - 2 ln(u+1/4)] - 2T + 4(u+1/4) arctan(c/(u+1/4)),
    c = T/2 -- the inner t-integral of the delta1 integrand done first,
    exactly.  The -2T part integrates to zero against the sawtooth on every
    interval; the arctan part is centred so that the large v*arctan(c/v) ~ c
    plateau cancels analytically instead of numerically.
    """
    c = np.longdouble(T) / 2
    _, lo, hi, k0 = _interval_arrays(J)
    log_piece = _log_ratio_pieces(c, lo, hi, k0)
    ai_hi = np.arctan(c / hi)
    ai_lo = np.arctan(c / lo)
    aid = _atan_inv_diff(hi, lo, c)
    # dA5 - c where A5 = integral v*arctan(c/v) dv
    d5c = (
        0.5 * (hi * hi * aid + (hi * hi - lo * lo) * ai_lo)
        - 0.5 * c * c * _atan_diff(hi, lo, c)
        - 0.5 * c
    )
    # dA6 - c*k0 where A6 = integral v^2*arctan(c/v) dv
    d6c = (
        (hi**3 * aid + (hi**3 - lo**3) * ai_lo) / 3.0
        - (c**3 / 6.0) * _ln_diff(hi, lo, c)
        - (2.0 * c / 3.0) * k0
    )
    pieces = np.longdouble(T) * log_piece + 4 * (k0 * d5c - d6c)
    total = float(np.sum(pieces))

    def g(u):
        w = u + 0.25
        return T * math.log1p(c * c / (w * w)) - 2.0 * T + 4.0 * w * math.atan2(c, w)

    return total + _tail_em(g, float(J))


def _truncation_index(T: float) -> int:
    return max(4000, int(3.0 * T) + 100)


@lru_cache(maxsize=4096)
def delta0(T: float) -> float:
    """delta(T) = T/4 ln(1 + 1/(4T^2)) + arctan(1/(2T))/4
                - (T/2) integral_0^inf (1/2-{u}) / ((u+1/4)^2 + (T/2)^2) du."""
    if T <= 0:
        raise ValueError("delta0 needs T > 0")
    J = _truncation_index(T)
    closed = T / 4.0 * math.log1p(1.0 / (4.0 * T * T)) + 0.25 * math.atan2(1.0, 2.0 * T)
    return float(closed - (T / 2.0) * _sawtooth_integral_inverse_quadratic(T / 2.0, J))


@lru_cache(maxsize=4096)
def delta1(T: float) -> float:
    """integral_0^T delta0, via its closed form.

    The two individually divergent sawtooth integrals (against
    ln((u+1/4)^2 + T^2/4) and against 2 ln(u+1/4), the latter being 2A)
    combine into one convergent integrand, which is what gets summed.
    """
    if T <= 0:
        raise ValueError("delta1 needs T > 0")
    J = _truncation_index(T)
    closed = (
        0.125 * T * T * math.log1p(1.0 / (4.0 * T * T))
        + 3.0 / 32.0 * math.log1p(4.0 * T * T)
        + 0.25 * T * math.atan2(1.0, 2.0 * T)
    )
    return closed - _sawtooth_integral_log_ratio(T / 2.0, J)


@lru_cache(maxsize=4096)
def delta2(T: float) -> float:
    """integral_0^T delta1, assembling the exact t-antiderivatives of each
    closed term and integrating the double integral exactly in t first."""
    if T <= 0:
        raise ValueError("delta2 needs T > 0")
    J = _truncation_index(T)
    at2T = math.atan(2.0 * T)
    part_a = (
        T**3 / 24.0 * math.log1p(1.0 / (4.0 * T * T)) + T / 48.0 - at2T / 96.0
    )
    part_b = 3.0 / 32.0 * T * math.log1p(4.0 * T * T) - 3.0 / 16.0 * T + 3.0 / 32.0 * at2T
    part_c = 0.125 * T * T * math.atan2(1.0, 2.0 * T) + T / 16.0 - at2T / 32.0
    return part_a + part_b + part_c - _sawtooth_integral_t_integrated(T, J)


def combo_mu1(T: float) -> float:
    """T delta0(T) - delta1(T); asymptotically -(ln T)/48 - B."""
    return T * delta0(T) - delta1(T)


def combo_mu2(T: float) -> float:
    """T^2 delta0 - 2T delta1 + 2 delta2; asymptotically -T/48 - pi/32."""
    return T * T * delta0(T) - 2.0 * T * delta1(T) + 2.0 * delta2(T)


# ---------------------------------------------------------------------------
# The constant A.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def constant_A(J: int = 100000) -> float:
    """Generalized value of integral_0^inf (1/2-{u}) ln(u+1/4) du.

    A = t_0 + sum_{j>=1} t_j - gamma/12 where
    t_j = integral_0^1 (1/2-a) { ln(j+a+1/4) - ln j - (a+1/4)/j } da
    and the j = 0 term needs no counterterms.  Each t_j is evaluated through
    the already-small integrand (1/2-a)(log1p(x) - x) with x = (a+1/4)/j so
    no large quantities ever cancel, and the truncation tail is summed
    analytically from t_j = sum_m (-1)^(m+1) I_m / (m j^m).
    """
    nodes, weights = np.polynomial.legendre.leggauss(24)
    a = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    saw = 0.5 - a
    # j = 0: closed form of integral (1/2-a) ln(a+1/4) da (small arguments)
    lo, hi, k0 = 0.25, 1.25, 0.75

    def anti(v):
        return k0 * (v * math.log(v) - v) - (0.5 * v * v * math.log(v) - 0.25 * v * v)

    total = anti(hi) - anti(lo)
    j = np.arange(1, J + 1, dtype=float)
    x = (a[:, None] + 0.25) / j[None, :]
    integrand = saw[:, None] * (np.log1p(x) - x)
    total += float(np.sum(w @ integrand))
    # tail: t_j = sum_{m>=2} (-1)^(m+1) I_m/(m j^m), I_m = int (1/2-a)(a+1/4)^m da
    for m in range(2, 6):
        i_m = float(np.sum(w * saw * (a + 0.25) ** m))
        # sum_{j>J} j^-m via Euler-Maclaurin
        zt = J ** (1 - m) / (m - 1) - J ** (-m) / 2.0 + m * J ** (-m - 1) / 12.0
        total += (-1) ** (m + 1) * i_m / m * zt
    return total - EULER_GAMMA / 12.0


# ---------------------------------------------------------------------------
# Symbolic asymptotic series.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaAsymptotics:
    """Exact asymptotic data for delta0, delta1, delta2.

    Series entries map T-power -> rational coefficient; the log and constant
    parts carry their exact constant combinations (A stays symbolic)."""

    delta0_series: tuple[tuple[int, Fraction], ...]
    delta1_log: Fraction
    delta1_const: ConstCombo
    delta1_series: tuple[tuple[int, Fraction], ...]
    delta2_tlog: Fraction
    delta2_t: ConstCombo
    delta2_const: ConstCombo
    delta2_series: tuple[tuple[int, Fraction], ...]

    def mu1_combination(self) -> dict[tuple[int, int], ConstCombo]:
        """Exact series of T delta0 - delta1 as {(power, logpower): combo}."""
        out: dict[tuple[int, int], ConstCombo] = {}

        def add(key, combo):
            cur = out.get(key, ConstCombo())
            new = cur + combo
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new

        for p, c in self.delta0_series:
            add((p + 1, 0), ConstCombo.rational(c))
        add((0, 1), ConstCombo.rational(-self.delta1_log))
        add((0, 0), -self.delta1_const)
        for p, c in self.delta1_series:
            add((p, 0), ConstCombo.rational(-c))
        return out

    def mu2_combination(self) -> dict[tuple[int, int], ConstCombo]:
        """Exact series of T^2 delta0 - 2T delta1 + 2 delta2."""
        out: dict[tuple[int, int], ConstCombo] = {}

        def add(key, combo):
            cur = out.get(key, ConstCombo())
            new = cur + combo
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new

        for p, c in self.delta0_series:
            add((p + 2, 0), ConstCombo.rational(c))
        add((1, 1), ConstCombo.rational(-2 * self.delta1_log))
        add((1, 0), -2 * self.delta1_const)
        for p, c in self.delta1_series:
            add((p + 1, 0), ConstCombo.rational(-2 * c))
        add((1, 1), ConstCombo.rational(2 * self.delta2_tlog))
        add((1, 0), 2 * self.delta2_t)
        add((0, 0), 2 * self.delta2_const)
        for p, c in self.delta2_series:
            add((p, 0), ConstCombo.rational(2 * c))
        return out


def delta_asymptotics() -> DeltaAsymptotics:
    return DeltaAsymptotics(
        delta0_series=(
            (-1, Fraction(1, 48)),
            (-3, Fraction(7, 5760)),
            (-5, Fraction(31, 80640)),
        ),
        delta1_log=Fraction(1, 48),
        delta1_const=combo_C1(),
        delta1_series=(
            (-2, Fraction(-7, 11520)),
            (-4, Fraction(-31, 322560)),
        ),
        delta2_tlog=Fraction(1, 48),
        delta2_t=combo_B(),
        delta2_const=ConstCombo({MON_PI: Fraction(-1, 64)}),
        delta2_series=(
            (-1, Fraction(7, 11520)),
            (-3, Fraction(31, 967680)),
        ),
    )


def delta0_asymptotic(T: float, terms: int = 3) -> float:
    asym = delta_asymptotics().delta0_series[:terms]
    return sum(float(c) * T**p for p, c in asym)


def delta1_asymptotic(T: float, A: float | None = None) -> float:
    if A is None:
        A = constant_A()
    da = delta_asymptotics()
    out = float(da.delta1_log) * math.log(T) + complex(da.delta1_const.eval(A)).real
    for p, c in da.delta1_series:
        out += float(c) * T**p
    return out


def delta2_asymptotic(T: float, A: float | None = None) -> float:
    if A is None:
        A = constant_A()
    da = delta_asymptotics()
    out = float(da.delta2_tlog) * T * math.log(T)
    out += complex(da.delta2_t.eval(A)).real * T
    out += complex(da.delta2_const.eval(A)).real
    for p, c in da.delta2_series:
        out += float(c) * T**p
    return out
