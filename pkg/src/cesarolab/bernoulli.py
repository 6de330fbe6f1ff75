"""Exact Bernoulli numbers, Bernoulli polynomials, their periodic extensions
and the power-sum polynomials b_n(k) = sum_{j<=k} j^(n-1).
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Union

from .exactnum import GR_ZERO, GaussianRational, Poly


class BernoulliCache:
    """Lazily extended cache of exact Bernoulli numbers and polynomials.

    Extension happens behind a lock (single writer); reads of already
    published entries are lock-free.
    """

    def __init__(self) -> None:
        self._numbers: list[Fraction] = [Fraction(1)]
        self._polys: list[Poly] = [Poly.const(GaussianRational(Fraction(1)))]
        self._lock = threading.Lock()

    def number(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("Bernoulli index must be >= 0")
        if n >= len(self._numbers):
            self._extend_numbers(n)
        return self._numbers[n]

    def poly(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("Bernoulli index must be >= 0")
        if n >= len(self._polys):
            self._extend_polys(n)
        return self._polys[n]

    def _extend_numbers(self, n: int) -> None:
        with self._lock:
            nums = list(self._numbers)
            # B_m from sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1,
            # which encodes the defining recursion with B_1 = -1/2.
            while len(nums) <= n:
                m = len(nums)
                s = sum(Fraction(math.comb(m + 1, j)) * nums[j] for j in range(m))
                nums.append(-s / (m + 1))
            self._numbers = nums

    def _extend_polys(self, n: int) -> None:
        self.number(n)
        with self._lock:
            polys = list(self._polys)
            while len(polys) <= n:
                m = len(polys)
                coeffs = [
                    GaussianRational(Fraction(math.comb(m, j)) * self._numbers[m - j])
                    for j in range(m + 1)
                ]
                polys.append(Poly(coeffs))
            self._polys = polys


_CACHE = BernoulliCache()


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n (convention B_1 = -1/2)."""
    return _CACHE.number(n)


def bernoulli_poly_coeffs(n: int) -> Poly:
    """B_n(x) as an exact Poly in x (monic, degree n)."""
    return _CACHE.poly(n)


NumberLike = Union[int, float, complex, Fraction]


def bernoulli_poly(n: int, x: NumberLike) -> NumberLike:
    """Evaluate B_n at x; exact for Fraction/int x, floating otherwise."""
    p = _CACHE.poly(n)
    if isinstance(x, (int, Fraction)):
        out = Fraction(0)
        for c in reversed(p.coeffs):
            out = out * x + c.re
        return out
    out_c = 0j
    for c in reversed(p.coeffs):
        out_c = out_c * x + c.to_complex()
    return out_c if isinstance(x, complex) else out_c.real


def periodic_bernoulli(n: int, x: float) -> float:
    """B_n({x}); for n = 1 the value at integers is defined to be 0."""
    if n < 1:
        raise ValueError("periodic Bernoulli needs n >= 1")
    frac = x - math.floor(x)
    if n == 1 and frac == 0.0:
        return 0.0
    return bernoulli_poly(n, frac)


def power_sum_poly(n: int) -> Poly:
    """b_n(k) = sum_{j=1}^{k} j^(n-1) as an exact Poly in k.

    Built from the Bernoulli polynomials: b_n(k) = (B_n(k+1) - B_n(1))/n,
    which agrees with the brute-force sum at every positive integer.
    """
    if n < 1:
        raise ValueError("power-sum index must be >= 1")
    bn = _CACHE.poly(n)
    # shift: B_n(k+1) expanded in k
    shifted = _shift_poly_by_one(bn)
    const = bernoulli_poly(n, 1)
    coeffs = list(shifted.coeffs)
    coeffs[0] = coeffs[0] - GaussianRational(const)
    return Poly(coeffs).map_coeffs(lambda c: c / n)


def _shift_poly_by_one(p: Poly) -> Poly:
    out = Poly()
    xp1 = Poly([GaussianRational(Fraction(1)), GaussianRational(Fraction(1))])
    power = Poly.const(GaussianRational(Fraction(1)))
    for k, c in enumerate(p.coeffs):
        if k > 0:
            power = power * xp1
        if not c.is_zero():
            out = out + power.scale(c)
    return out


def zeta_nonpositive_int(n: int) -> Fraction:
    """Exact zeta(-n) for n >= 0: zeta(0) = -1/2, zeta(-n) = -B_{n+1}/(n+1).

    The n = 0 case is special under the B_1 = -1/2 convention.
    """
    if n < 0:
        raise ValueError("expects a non-positive zeta argument, given as -n with n >= 0")
    if n == 0:
        return Fraction(-1, 2)
    return -bernoulli_number(n + 1) / (n + 1)


def power_sum_value(n: int, k: int) -> int:
    """Brute-force sum_{j=1}^k j^(n-1); oracle for power_sum_poly."""
    return sum(j ** (n - 1) for j in range(1, k + 1))
