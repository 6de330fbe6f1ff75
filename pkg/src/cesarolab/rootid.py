"""Derivative-side and root-side evaluators of the generalized root
identities

    d_f(z0, mu) = -(1/Gamma(mu)) (d/dz)^mu ln f |_{z0}
    r_f(z0, mu) = e^(i pi mu) sum_i M_i / (z0 - r_i)^mu

for the three worked functions cos(pi z/2), Gamma(z+1) and zeta(s), the
obstruction between the two sides, and the prime-product derivative side of
zeta for general mu."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bernoulli import bernoulli_poly
from .special import (
    digamma,
    hurwitz_zeta,
    lngamma,
    polygamma,
    renormalized_harmonic_series,
    rgamma,
    zeta,
    zeta_prime,
)
from .zeros import ZeroTable, sum_reciprocal_powers

TWO_PI = 2.0 * math.pi


@dataclass
class SideValue:
    """One side of a root identity, with its truncation provenance."""

    value: complex
    truncation: str = ""
    renormalized: bool = False
    exact: Fraction | None = None


@lru_cache(maxsize=8)
def prime_sieve(bound: int) -> np.ndarray:
    """All primes <= bound (deterministic Eratosthenes sieve)."""
    if bound < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(bound + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


# ---------------------------------------------------------------------------
# cos(pi z / 2)
# ---------------------------------------------------------------------------


def cos_deriv_side_mu1(z0: complex) -> complex:
    """-(d/dz) ln cos(pi z/2) = (pi/2) tan(pi z0/2)."""
    return math.pi / 2 * cmath.tan(math.pi * z0 / 2)


def cos_root_side_mu1(z0: complex, terms: int = 200000) -> SideValue:
    """-sum_k 2 z0 / (z0^2 - (2k-1)^2), truncated with an integral tail."""
    z0 = complex(z0)
    if z0.imag == 0 and abs(z0.real) % 2 == 1:
        raise ZeroDivisionError("z0 sits on a root of cos(pi z/2)")
    k = np.arange(1, terms + 1, dtype=float)
    odd = 2 * k - 1
    total = complex(np.sum(2 * z0 / (odd * odd - z0 * z0)))
    # tail: sum_{k>K} f(k) = int_{K+1/2}^inf f dx + f'(K+1/2)/24 + ...
    u = 2 * (terms + 0.5) - 1
    total += 0.5 * cmath.log((u + z0) / (u - z0))
    x = terms + 0.5
    fprime = -8 * z0 * (2 * x - 1) / ((2 * x - 1) ** 2 - z0 * z0) ** 2
    total += fprime / 24
    return SideValue(value=total, truncation=f"{terms} root pairs + integral tail")


def cos_root_side(z0: complex, mu: int, terms: int = 200000) -> SideValue:
    """e^(i pi mu) sum over roots +-(2k-1) of 1/(z0 - r)^mu for integer
    mu >= 2 (classically convergent)."""
    if mu < 2:
        raise ValueError("use cos_root_side_mu1 for mu = 1")
    z0 = complex(z0)
    k = np.arange(1, terms + 1, dtype=float)
    odd = 2 * k - 1
    total = complex(np.sum((z0 - odd) ** (-mu) + (z0 + odd) ** (-mu)))
    # tail: (1/2) int_{2K}^inf [(z0-u)^(-mu) + (z0+u)^(-mu)] du
    u = 2.0 * terms
    total += ((z0 + u) ** (1 - mu) - (z0 - u) ** (1 - mu)) / (2 * (mu - 1))
    return SideValue(
        value=(-1) ** mu * total, truncation=f"{terms} root pairs + integral tail"
    )


def cos_sides_general_mu(mu: complex) -> tuple[complex, complex]:
    """Closed forms of both sides at z0 = 0 for general mu (not 1):

    d = -e^(i pi mu/2) pi^mu / Gamma(mu) (1 - 2^mu) zeta(1 - mu)
    r = e^(i pi mu) (1 + e^(-i pi mu)) (1 - 2^-mu) zeta(mu)

    Their equality is the zeta functional equation.
    """
    mu = complex(mu)
    if mu == 1:
        raise ValueError("mu = 1 needs the renormalized route")
    if mu == 0:
        return 0j, 0j
    d = (
        -cmath.exp(1j * math.pi * mu / 2)
        * cmath.exp(mu * math.log(math.pi))
        * rgamma(mu)
        * (1 - cmath.exp(mu * math.log(2)))
        * zeta(1 - mu)
    )
    r = (
        cmath.exp(1j * math.pi * mu)
        * (1 + cmath.exp(-1j * math.pi * mu))
        * (1 - cmath.exp(-mu * math.log(2)))
        * zeta(mu)
    )
    return d, r


# ---------------------------------------------------------------------------
# Gamma(z+1)
# ---------------------------------------------------------------------------


def _is_exactable(z0) -> bool:
    return isinstance(z0, (int, Fraction))


def gamma_root_side(z0, mu: int) -> SideValue:
    """Root side for Gamma(z+1) (all roots are simple poles at -1, -2, ...).

    mu <= 0: exact polynomial value -B_{n+1}(-z0)/(n+1) with n = -mu
             (exact Fractions when z0 is rational);
    mu == 1: the renormalized series sum (1/(z0+n) - 1/n) + gamma;
    mu >= 2: -(-1)^mu zeta_H(z0, mu), classically convergent.
    """
    if mu <= 0:
        n = -mu
        if _is_exactable(z0):
            val = -bernoulli_poly(n + 1, Fraction(-z0)) / (n + 1)
            return SideValue(value=complex(val), exact=val)
        val = -bernoulli_poly(n + 1, -complex(z0)) / (n + 1)
        return SideValue(value=complex(val))
    if mu == 1:
        return SideValue(
            value=renormalized_harmonic_series(complex(z0)),
            renormalized=True,
            truncation="renormalized harmonic series, 1e5 terms + tail",
        )
    return SideValue(value=-((-1.0) ** mu) * hurwitz_zeta(complex(z0), mu))


def _bernoulli_generating_coefficient(z0, order: int):
    """Coefficient of t^order in t e^((z0+1)t)/(e^t - 1) by power-series
    division (exact when z0 is rational)."""
    exactly = _is_exactable(z0)
    one = Fraction(1) if exactly else 1.0
    shift = (Fraction(z0) if exactly else complex(z0)) + 1
    # numerator t*e^(shift t) = sum_{m>=1} shift^(m-1)/(m-1)! t^m = t * A(t)
    # denominator e^t - 1 = t * B(t), B_m = 1/(m+1)!
    A = [shift**m / math.factorial(m) * one for m in range(order + 1)]
    B = [one / math.factorial(m + 1) for m in range(order + 1)]
    q = []
    for m in range(order + 1):
        acc = A[m]
        for i, qi in enumerate(q):
            acc -= qi * B[m - i]
        q.append(acc)
    return q[order]


def gamma_deriv_side(z0, mu: int) -> SideValue:
    """Derivative side for Gamma(z+1).

    mu <= 0: coefficient extraction from the generating function
             t e^((z0+1)t)/(e^t - 1) -- an independent route from the
             Bernoulli-polynomial root side;
    mu == 1: -psi(z0+1) (renormalized);
    mu >= 2: -psi^(mu-1)(z0+1)/(mu-1)!.
    """
    if mu <= 0:
        n = -mu
        g = _bernoulli_generating_coefficient(z0, n + 1)
        if _is_exactable(z0):
            val = Fraction((-1) ** n * math.factorial(n)) * g
            return SideValue(value=complex(val), exact=val)
        return SideValue(value=complex((-1) ** n * math.factorial(n) * g))
    if mu == 1:
        return SideValue(value=-digamma(complex(z0) + 1), renormalized=True)
    return SideValue(
        value=-polygamma(mu - 1, complex(z0) + 1) / math.factorial(mu - 1)
    )


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------


def zeta_deriv_side(s0: complex, mu: complex, prime_bound: int = 10**6) -> SideValue:
    """d_zeta(s0, mu) = -(e^(i pi mu)/Gamma(mu)) sum_p (ln p)^mu
    sum_k k^(mu-1) p^(-k s0), for Re(s0) > 1.

    The prime sum is truncated at prime_bound with a prime-number-theorem
    tail correction int_P^inf (ln x)^(mu-1) x^(-s0) dx for the k = 1 layer.
    """
    s0 = complex(s0)
    mu = complex(mu)
    if s0.real <= 1:
        raise ValueError("derivative side implemented for Re(s0) > 1 only")
    if prime_bound < 100:
        raise ValueError("prime bound too small to be meaningful")
    inv_gamma = rgamma(mu)
    if inv_gamma == 0:
        return SideValue(
            value=0j, truncation=f"exact zero (1/Gamma({mu.real:g}) = 0)"
        )
    primes = prime_sieve(prime_bound)
    lp = np.log(primes.astype(float))
    lp_mu = np.exp(mu * np.log(lp))
    base = np.exp(-s0 * lp)
    k_max = max(2, int(math.ceil(46.0 / (s0.real * math.log(2)))))
    total = 0j
    powk = np.ones_like(base)
    for k in range(1, k_max + 1):
        powk = powk * base
        total += k ** (mu - 1) * complex(np.sum(lp_mu * powk))
    tail = _prime_tail_integral(float(prime_bound), mu, s0)
    total += tail
    value = -cmath.exp(1j * math.pi * mu) * inv_gamma * total
    return SideValue(
        value=value,
        truncation=(
            f"primes <= {prime_bound}, k <= {k_max}, PNT tail {abs(tail):.2e}"
        ),
    )


def _prime_tail_integral(P: float, mu: complex, s0: complex) -> complex:
    """int_P^inf (ln x)^(mu-1) x^(-s0) dx via x = P e^v."""
    decay = s0.real - 1.0
    V = 60.0 / decay
    nodes, weights = np.polynomial.legendre.leggauss(48)
    total = 0j
    panels = 4
    for i in range(panels):
        a, b = V * i / panels, V * (i + 1) / panels
        v = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        lg = np.log(math.log(P) + v)
        f = np.exp((mu - 1) * lg) * np.exp((1 - s0) * v)
        total += 0.5 * (b - a) * complex(np.sum(weights * f))
    return cmath.exp((1 - s0) * cmath.log(P)) * total


def zeta_trivial_part_renormalized(s0: complex) -> complex:
    """Renormalized sum over trivial roots sum_k 1/(s0 + 2k) = -psi(s0/2+1)/2
    (via the root identity for Gamma(s/2+1); equals gamma/2 at s0 = 0)."""
    return -0.5 * digamma(complex(s0) / 2 + 1)


def zeta_root_side_mu1(s0: complex, zeros: ZeroTable) -> SideValue:
    """Root side of the mu = 1 identity:
    -{ trivial(renormalized) - 1/(s0-1) + sum over +-gamma_i of 1/(s0-rho) }."""
    if zeros.count == 0:
        raise ValueError("empty zero table")
    s0 = complex(s0)
    trivial = zeta_trivial_part_renormalized(s0)
    pole = -1.0 / (s0 - 1.0)
    nt = sum_reciprocal_powers(zeros, s0, 1)
    return SideValue(
        value=-(trivial + pole + nt),
        truncation=f"{zeros.count} zeros up to {zeros.max_ordinate:.3f}",
        renormalized=True,
    )


def zeta_deriv_side_mu1(s0: complex) -> complex:
    """-zeta'(s0)/zeta(s0)."""
    s0 = complex(s0)
    return -zeta_prime(s0) / zeta(s0)


def obstruction(s0: complex, zeros: ZeroTable) -> complex:
    """Root side minus derivative side of the mu = 1 identity; the healing
    constant that a multiplicative factor exp(c s) would have to add to the
    derivative side (~ ln(pi)/2 for zeta at every s0)."""
    return zeta_root_side_mu1(s0, zeros).value - zeta_deriv_side_mu1(s0)


@dataclass(frozen=True)
class HadamardCheck:
    residual: float
    tail_correction: float
    truncation: str


def hadamard_check(s: complex, zeros: ZeroTable) -> HadamardCheck:
    """Residual of the paired-product expansion

    -zeta'/zeta(s) = 1/s + 1/(s-1) + psi(s/2)/2 - ln(pi)/2
                     - (2s-1) sum_{gamma>0} 1 / ((s-1/2)^2 + gamma^2)

    over the tabulated zeros, with the truncated tail estimated from the
    smooth zero density d(Ncheck)/dt = ln(t/2pi)/(2pi)."""
    s = complex(s)
    lhs = -zeta_prime(s) / zeta(s)
    g = zeros.ordinates
    pair_sum = complex((2 * s - 1) * np.sum(1.0 / ((s - 0.5) ** 2 + g * g)))
    tail = _hadamard_tail(s, zeros.max_ordinate)
    rhs = (
        1.0 / s
        + 1.0 / (s - 1.0)
        + 0.5 * digamma(s / 2)
        - 0.5 * math.log(math.pi)
        - pair_sum
        - tail
    )
    return HadamardCheck(
        residual=float(abs(lhs - rhs)),
        tail_correction=float(abs(tail)),
        truncation=f"{zeros.count} zeros up to {zeros.max_ordinate:.3f}",
    )


def _hadamard_tail(s: complex, big_t: float) -> complex:
    """(2s-1) int_T^inf [ln(t/2pi)/2pi] / ((s-1/2)^2 + t^2) dt."""
    nodes, weights = np.polynomial.legendre.leggauss(64)
    x = 0.5 * (nodes + 1.0)  # (0,1); t = big_t/x
    x = np.clip(x, 1e-12, 1.0)
    t = big_t / x
    integrand = np.log(t / TWO_PI) / TWO_PI / ((s - 0.5) ** 2 + t * t) * (big_t / (x * x))
    return complex((2 * s - 1) * 0.5 * np.sum(weights * integrand))
