"""High-accuracy evaluators for zeta, its derivative, the Hurwitz zeta
function and log-gamma via the remainder constant of the log partial sums,
plus verifiers for the classical identities (duplication, functional
equations, the vanishing shifted-zeta integral, Stirling forms).

Everything is Euler-Maclaurin based: the zeta family by tail corrections of
the direct sum, log-gamma through the limit constant

    C_z = lim_k { sum_{j<=k} ln(z+j) - (z+k+1/2) ln(z+k) + (z+k) }

accelerated by the asymptotic series in inverse powers, with
ln Gamma(z+1) = C_0 - C_z.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bernoulli import bernoulli_number

TWO_PI = 2.0 * math.pi
HALF_LN_TWO_PI = 0.5 * math.log(TWO_PI)


class PoleError(ValueError):
    """Evaluation requested at a pole of the function."""


@dataclass(frozen=True)
class EulerMaclaurinConfig:
    cutoff: int = 50          # direct-sum terms
    correction_order: int = 14  # number of Bernoulli correction terms (even)
    target_tol: float = 1e-12

    def __post_init__(self):
        if self.cutoff < 10:
            raise ValueError("cutoff must be >= 10")
        if self.correction_order % 2 or self.correction_order > 30:
            raise ValueError("correction order must be even and <= 30")


DEFAULT_EM = EulerMaclaurinConfig()


def _em_cutoff(z: complex, s: complex, cfg: EulerMaclaurinConfig) -> int:
    return max(cfg.cutoff, int(2 * abs(z)) + 10, int(1.2 * abs(s.imag)) + 10)


def hurwitz_zeta(z: complex, s: complex, cfg: EulerMaclaurinConfig = DEFAULT_EM) -> complex:
    """sum_{n>=1} (z+n)^-s, continued to all s != 1.

    Euler-Maclaurin: direct sum to N, then tail corrections at a = z+N+1.
    """
    return _hurwitz_em(complex(z), complex(s), cfg, derivative=False)


def hurwitz_zeta_ds(z: complex, s: complex, cfg: EulerMaclaurinConfig = DEFAULT_EM) -> complex:
    """d/ds of hurwitz_zeta, by term-wise differentiation (no finite
    differences)."""
    return _hurwitz_em(complex(z), complex(s), cfg, derivative=True)


def _check_hurwitz_args(z: complex, s: complex) -> None:
    if s == 1:
        raise PoleError("zeta family has a pole at s = 1")
    if z.imag == 0 and z.real <= -1 and float(z.real).is_integer():
        raise PoleError("Hurwitz zeta has singular terms at non-positive integer shifts")


def _hurwitz_em(z: complex, s: complex, cfg: EulerMaclaurinConfig, derivative: bool) -> complex:
    _check_hurwitz_args(z, s)
    N = _em_cutoff(z, s, cfg)
    total = 0.0 + 0.0j
    dtotal = 0.0 + 0.0j
    for n in range(1, N + 1):
        base = z + n
        lg = cmath.log(base)
        term = cmath.exp(-s * lg)
        total += term
        if derivative:
            dtotal -= lg * term
    a = z + N + 1
    la = cmath.log(a)
    # integral tail a^(1-s)/(s-1)
    tail = cmath.exp((1 - s) * la) / (s - 1)
    total += tail
    if derivative:
        dtotal += -la * tail - cmath.exp((1 - s) * la) / (s - 1) ** 2
    # half-term a^-s/2
    half = cmath.exp(-s * la) / 2
    total += half
    if derivative:
        dtotal -= la * half
    # Bernoulli corrections: B_2k/(2k)! * (s)_{2k-1} * a^(-s-2k+1)
    poch = 1.0 + 0.0j  # rising factorial (s)_m
    dpoch = 0.0 + 0.0j
    m = 0
    for k in range(1, cfg.correction_order // 2 + 1):
        while m < 2 * k - 1:
            dpoch = dpoch * (s + m) + poch
            poch = poch * (s + m)
            m += 1
        b = float(bernoulli_number(2 * k)) / math.factorial(2 * k)
        apw = cmath.exp((-s - 2 * k + 1) * la)
        total += b * poch * apw
        if derivative:
            dtotal += b * (dpoch * apw - la * poch * apw)
    return dtotal if derivative else total


def zeta(s: complex, cfg: EulerMaclaurinConfig = DEFAULT_EM) -> complex:
    """Riemann zeta for all s != 1 (analytic continuation built in)."""
    return hurwitz_zeta(0.0, s, cfg)


def zeta_prime(s: complex, cfg: EulerMaclaurinConfig = DEFAULT_EM) -> complex:
    """zeta'(s) by differentiated Euler-Maclaurin."""
    return hurwitz_zeta_ds(0.0, s, cfg)


# ---------------------------------------------------------------------------
# Log-gamma via the remainder constant.
# ---------------------------------------------------------------------------


def gamma_remainder_constant(z0: complex, k: int = 1000, em_terms: int = 4) -> complex:
    """C_z0 = lim { sum_{j<=k} ln(z0+j) - (z0+k+1/2) ln(z0+k) + (z0+k) }.

    The limit is accelerated by subtracting the inverse-power series
    sum B_2n / ((2n-1) 2n (z0+k)^(2n-1)); at k = 1000 the truncation error is
    far below 1e-10.
    """
    z0 = complex(z0)
    if z0.imag == 0 and z0.real <= -1 and float(z0.real).is_integer():
        raise PoleError("remainder constant undefined at non-positive integer shifts")
    s = 0.0 + 0.0j
    for j in range(1, k + 1):
        s += cmath.log(z0 + j)
    w = z0 + k
    s -= (w + 0.5) * cmath.log(w)
    s += w
    s -= stirling_J(w, em_terms)
    return s


@lru_cache(maxsize=1)
def _c_zero() -> complex:
    return gamma_remainder_constant(0.0)


def lngamma(z: complex) -> complex:
    """ln Gamma(z+1) = C_0 - C_z (continuous along the summation ray)."""
    return _c_zero() - gamma_remainder_constant(z)


def gamma_fn(z: complex) -> complex:
    """Gamma(z) for z not a non-positive integer."""
    return cmath.exp(lngamma(z - 1))


def rgamma(z: complex) -> complex:
    """1/Gamma(z), with the poles of Gamma mapped to exact zeros."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and float(z.real).is_integer():
        return 0.0 + 0.0j
    return cmath.exp(-lngamma(z - 1))


def stirling_J(z: complex, terms: int) -> complex:
    """Truncated Stirling correction series
    sum_{n<=terms} B_2n / ((2n-1) 2n) z^(1-2n); asymptotic, so terms <= 8."""
    if z == 0:
        raise ZeroDivisionError("Stirling series needs z != 0")
    if terms > 8:
        raise ValueError("asymptotic series: at most 8 terms are meaningful")
    out = 0.0 + 0.0j
    zi = 1.0 / complex(z)
    zpow = zi
    for n in range(1, terms + 1):
        out += float(bernoulli_number(2 * n)) / ((2 * n - 1) * (2 * n)) * zpow
        zpow *= zi * zi
    return out


def digamma(x: complex) -> complex:
    """psi(x) by upward recurrence into the asymptotic region (with
    reflection for Re x < 0)."""
    x = complex(x)
    if x.imag == 0 and x.real <= 0 and float(x.real).is_integer():
        raise PoleError("digamma pole at non-positive integer")
    if x.real < 0:
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        return digamma(1 - x) - math.pi / cmath.tan(math.pi * x)
    out = 0.0 + 0.0j
    while x.real < 14:
        out -= 1.0 / x
        x += 1
    inv = 1.0 / x
    out += cmath.log(x) - 0.5 * inv
    inv2 = inv * inv
    pw = inv2
    for n in range(1, 8):
        out -= float(bernoulli_number(2 * n)) / (2 * n) * pw
        pw *= inv2
    return out


def polygamma(m: int, x: complex) -> complex:
    """psi^(m)(x) for m >= 1, Re x > 0 (recurrence + asymptotic series)."""
    if m < 1:
        return digamma(x)
    x = complex(x)
    if x.real <= 0:
        raise ValueError("polygamma implemented for Re x > 0 only")
    out = 0.0 + 0.0j
    sign = (-1) ** (m + 1)
    while x.real < 14 + 2 * m:
        out += sign * math.factorial(m) / x ** (m + 1)
        x += 1
    # psi^(m)(x) ~ (-1)^(m-1) [ (m-1)!/x^m + m!/(2 x^(m+1))
    #             + sum_k B_2k (2k+m-1)!/((2k)! x^(2k+m)) ]
    asy = math.factorial(m - 1) / x**m + math.factorial(m) / (2 * x ** (m + 1))
    for k in range(1, 9):
        asy += (
            float(bernoulli_number(2 * k))
            * math.factorial(2 * k + m - 1)
            / math.factorial(2 * k)
            / x ** (2 * k + m)
        )
    return out + (-1) ** (m - 1) * asy


# ---------------------------------------------------------------------------
# Identity verifiers.
# ---------------------------------------------------------------------------


def verify_duplication(z: complex, n: int) -> float:
    """|log LHS - log RHS| of the order-n multiplication formula
    (2 pi)^((n-1)/2) Gamma(z+1) = n^(z+1/2) prod_j Gamma((z+j)/n)."""
    if n < 1:
        raise ValueError("duplication order must be >= 1")
    lhs = (n - 1) / 2 * math.log(TWO_PI) + lngamma(z)
    rhs = (z + 0.5) * cmath.log(n)
    for j in range(1, n + 1):
        rhs += lngamma((z + j) / n - 1)
    return abs(lhs - rhs)


def verify_functional_equations(sample: complex) -> tuple[float, float]:
    """Residuals of the reflection formula for Gamma and of the zeta
    functional equation at the sample point.

    Returns (|Gamma(z)Gamma(1-z) sin(pi z)/pi - 1|,
             |zeta(1-s) - 2^(1-s) pi^-s cos(pi s/2) Gamma(s) zeta(s)|).
    """
    z = complex(sample)
    gamma_resid = abs(gamma_fn(z) * gamma_fn(1 - z) * cmath.sin(math.pi * z) / math.pi - 1)
    s = z
    lhs = zeta(1 - s)
    rhs = 2 ** (1 - s) * math.pi ** (-s) * cmath.cos(math.pi * s / 2) * gamma_fn(s) * zeta(s)
    zeta_resid = abs(lhs - rhs)
    return float(gamma_resid), float(zeta_resid)


def stirling_residual(z: complex, terms: int = 3) -> float:
    """|ln Gamma(z+1) - [(z+1/2) ln z - z + ln(2 pi)/2 + J(z)]| for Re z > 0."""
    lhs = lngamma(z)
    rhs = (z + 0.5) * cmath.log(z) - z + HALF_LN_TWO_PI + stirling_J(z, terms)
    return abs(lhs - rhs)


def stirling_two_sided_residual(z: complex, terms: int = 3) -> float:
    """Residual of the negative-axis Stirling form

    ln Gamma(z+1) = [(z+1/2) ln z - z + ln(2 pi)/2 + J(z)] - (z+1/2) i pi
                    + (ln pi + i pi) - ln sin(pi z)

    with the principal branch approached from above the negative axis (the
    bracket is the full two-sided Stirling series including its constant).
    Both sides are logarithms determined up to whole turns, so the difference
    is reduced modulo 2 pi i before taking the modulus.
    """
    lhs = lngamma(z)
    rhs = (
        (z + 0.5) * cmath.log(z)
        - z
        + HALF_LN_TWO_PI
        + stirling_J(z, terms)
        - (z + 0.5) * 1j * math.pi
        + (math.log(math.pi) + 1j * math.pi)
        - cmath.log(cmath.sin(math.pi * z))
    )
    d = lhs - rhs
    d -= 2j * math.pi * round(d.imag / TWO_PI)
    return abs(d)


def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def verify_lemma2(s: complex, quad_points: int = 64) -> float:
    """|integral_{-1}^{0} zeta_H(z, s) dz|.

    The n = 1 summand (z+1)^-s is integrated analytically (its continued
    integral over the segment is 1/(1-s)); the remainder zeta_H(z+1, s) is
    analytic on the segment and handled by Gauss-Legendre quadrature.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("integral undefined at s = 1")
    nodes, weights = _gauss_legendre(quad_points)
    u = 0.5 * (nodes + 1.0)  # map to (0, 1)
    total = 0.0 + 0.0j
    for ui, wi in zip(u, weights):
        total += 0.5 * wi * hurwitz_zeta(ui, s)
    total += 1.0 / (1.0 - s)
    return abs(total)


def verify_hurwitz_duplication(n: int, z: complex, s: complex) -> float:
    """|zeta_H(z,s) - n^-s sum_{j=1..n} zeta_H(z/n - (n-j)/n, s)|."""
    lhs = hurwitz_zeta(z, s)
    rhs = 0.0 + 0.0j
    for j in range(1, n + 1):
        rhs += hurwitz_zeta(z / n - (n - j) / n, s)
    rhs *= n ** (-complex(s))
    return abs(lhs - rhs)


@dataclass(frozen=True)
class ShiftedZetaSumCheck:
    """Both reading of the shifted-sum identity sum_j zeta_H(-j/p, s) =
    (p^s - 1) zeta(s): `residual_full` uses j = 1..p-1 (the convention that
    makes the dilation argument close), `residual_inner` uses j = 2..p-2."""

    p: int
    s: complex
    residual_full: float
    residual_inner: float


def hurwitz_special_value_sums(p: int, s: complex) -> ShiftedZetaSumCheck:
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    s = complex(s)
    target = (p**s - 1) * zeta(s)
    full = sum(hurwitz_zeta(Fraction(-j, p), s) for j in range(1, p))
    inner = sum(hurwitz_zeta(Fraction(-j, p), s) for j in range(2, p - 1))
    return ShiftedZetaSumCheck(
        p=p,
        s=s,
        residual_full=abs(full - target),
        residual_inner=abs(inner - target),
    )


def renormalized_harmonic_series(z0: complex, n_terms: int = 100000) -> complex:
    """sum_{n>=1} (1/(z0+n) - 1/n) + gamma, with an integral tail correction.

    Equals -psi(z0+1); kept independent of digamma so the two can be checked
    against each other.
    """
    from .exactnum import EULER_GAMMA

    z0 = complex(z0)
    total = 0.0 + 0.0j
    for n in range(1, n_terms + 1):
        total += 1.0 / (z0 + n) - 1.0 / n
    # tail: sum_{n>N} f(n) ~ int_{N+1/2} f dx - f'(N+1/2)/24
    x = n_terms + 0.5
    total += -cmath.log(1 + z0 / x)
    fprime = -1.0 / (z0 + x) ** 2 + 1.0 / x**2
    total -= fprime / 24.0
    return total + EULER_GAMMA
