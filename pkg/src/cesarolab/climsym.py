"""Exact symbolic generalized-limit calculus for the zeta root-side ledgers.

The root-side assembly for mu = 0, -1, -2 works with truncated Laurent-log
expansions in the geometric variables z (upper half) and zt (lower half),
obtained from counting-function combinations in T by the exact substitution

    T = i (z - (s0 - 1/2)),     ln T = i pi/2 + ln z - sum_m (s0-1/2)^m/(m z^m)

(and the conjugate for the lower family).  The two-dimensional limit rule is
purely formal: positive powers of z or zt are discarded as averaging
eigenfunctions, negative powers vanish, and the surviving +-ln pair must
assemble into ln(z/zt), whose generalized limit is taken to be zero (tracked
as an explicit assumption flag).  Every coefficient is an exact polynomial in
s0 over exact constant combinations; no floats enter this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .bernoulli import power_sum_poly
from .cesaro import KAlphaPoly, clim_poly
from .counting import DeltaAsymptotics, delta_asymptotics
from .exactnum import (
    ConstCombo,
    GR_I,
    GR_ONE,
    GaussianRational,
    MON_PI,
    MON_PI_INV,
    MON_LN2,
    MON_LNPI,
    Poly,
)

DEFAULT_ORDER = 6

UPPER = 0
LOWER = 1


class LogDivergenceError(ValueError):
    """An unpaired logarithm at power zero: the expression has no
    generalized limit."""


class TruncationError(ValueError):
    """The requested truncation order cannot capture the constant term."""


class AssumptionRequired(ValueError):
    """A ledger step needs an explicitly granted growth estimate."""


def _cc(x) -> ConstCombo:
    return ConstCombo.of(x)


def _poly(coeffs) -> Poly:
    return Poly([_cc(c) for c in coeffs])


def poly_w() -> Poly:
    """s0 - 1/2 as an exact polynomial."""
    return _poly([Fraction(-1, 2), 1])


_I_COMBO = ConstCombo.rational(GR_I)
_HALF_I_PI = ConstCombo({MON_PI: GaussianRational(Fraction(0), Fraction(1, 2))})


class LaurentLog:
    """Truncated Laurent-log expression in one formal variable (T, z or zt):
    terms map (power, logpower) -> Poly in s0 over ConstCombo."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Poly] | None = None):
        t: dict[tuple[int, int], Poly] = {}
        if terms:
            for key, p in terms.items():
                if not p.is_zero():
                    t[(int(key[0]), int(key[1]))] = p
        self.terms = t

    def __add__(self, other: "LaurentLog") -> "LaurentLog":
        t = dict(self.terms)
        for key, p in other.terms.items():
            s = t.get(key, Poly()) + p
            if s.is_zero():
                t.pop(key, None)
            else:
                t[key] = s
        out = LaurentLog()
        out.terms = t
        return out

    def __neg__(self) -> "LaurentLog":
        out = LaurentLog()
        out.terms = {k: -p for k, p in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentLog") -> "LaurentLog":
        return self + (-other)

    def scale(self, c) -> "LaurentLog":
        combo = _cc(c)
        out = LaurentLog()
        out.terms = {k: p.scale(combo) for k, p in self.terms.items()}
        return out

    def shift_power(self, k: int) -> "LaurentLog":
        """Multiply by T^k."""
        out = LaurentLog()
        out.terms = {(p + k, l): poly for (p, l), poly in self.terms.items()}
        return out

    def integrate(self) -> "LaurentLog":
        """integral_0^T termwise; requires only non-negative powers.

        T^p -> T^(p+1)/(p+1);  T^p ln T -> T^(p+1) ln T/(p+1) - T^(p+1)/(p+1)^2.
        """
        out = LaurentLog()
        t: dict[tuple[int, int], Poly] = {}

        def add(key, p):
            s = t.get(key, Poly()) + p
            if s.is_zero():
                t.pop(key, None)
            else:
                t[key] = s

        for (p, l), poly in self.terms.items():
            if p < 0:
                raise ValueError("integration of negative powers not supported")
            if l == 0:
                add((p + 1, 0), poly.scale(_cc(Fraction(1, p + 1))))
            elif l == 1:
                add((p + 1, 1), poly.scale(_cc(Fraction(1, p + 1))))
                add((p + 1, 0), poly.scale(_cc(Fraction(-1, (p + 1) * (p + 1)))))
            else:
                raise ValueError("log powers above 1 are never needed here")
        out.terms = t
        return out

    def max_power(self) -> int:
        return max((p for p, _ in self.terms), default=0)


@dataclass
class SymExpr:
    """Additive two-family Laurent-log expression in z and zt.

    The families are never multiplied together; keys are
    (family, power, logpower) -> Poly in s0 over ConstCombo.
    """

    terms: dict[tuple[int, int, int], Poly] = field(default_factory=dict)
    truncation_order: int = DEFAULT_ORDER

    def __add__(self, other: "SymExpr") -> "SymExpr":
        t = dict(self.terms)
        for key, p in other.terms.items():
            s = t.get(key, Poly()) + p
            if s.is_zero():
                t.pop(key, None)
            else:
                t[key] = s
        return SymExpr(t, min(self.truncation_order, other.truncation_order))

    def __neg__(self) -> "SymExpr":
        return SymExpr({k: -p for k, p in self.terms.items()}, self.truncation_order)

    def coefficient(self, fam: int, power: int, logpow: int) -> Poly:
        return self.terms.get((fam, power, logpow), Poly())


def substitute_T(e: LaurentLog, which: str, order: int = DEFAULT_ORDER) -> SymExpr:
    """Exact substitution of T = +-i (z - (s0 - 1/2)) and the matching log
    expansion into a Laurent-log expression in T.

    ``which`` selects the family: "upper" (T, contour above the real axis)
    or "lower" (conjugate parametrization in zt).
    """
    if which not in ("upper", "lower"):
        raise ValueError("which must be 'upper' or 'lower'")
    sigma = 1 if which == "upper" else -1
    fam = UPPER if which == "upper" else LOWER
    max_p = e.max_power()
    if order < max_p + 2:
        raise TruncationError(
            f"truncation order {order} too small to capture the constant term "
            f"(max power {max_p})"
        )
    w = poly_w()
    w_pows = [Poly([_cc(1)])]
    for _ in range(order + max(0, max_p) + 2):
        w_pows.append(w_pows[-1] * w)
    si = GR_I if sigma == 1 else -GR_I

    out: dict[tuple[int, int, int], Poly] = {}

    def add(power: int, logpow: int, poly: Poly):
        if poly.is_zero() or power < -order:
            return
        key = (fam, power, logpow)
        s = out.get(key, Poly()) + poly
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    def t_power_expansion(p: int) -> list[tuple[int, Poly]]:
        """(z-power, coefficient poly) pairs of T^p, truncated at z^-order."""
        pairs = []
        phase = _cc(si**p)
        if p >= 0:
            for j in range(p + 1):
                coef = w_pows[p - j].scale(
                    _cc(Fraction(math.comb(p, j)) * GaussianRational(Fraction((-1) ** (p - j))))
                )
                pairs.append((j, coef.scale(phase)))
        else:
            q = -p
            for m in range(0, order + p + 1):
                coef = w_pows[m].scale(_cc(Fraction(math.comb(q + m - 1, m))))
                pairs.append((p - m, coef.scale(phase)))
        return pairs

    half_ipi = _HALF_I_PI if sigma == 1 else ConstCombo(
        {MON_PI: GaussianRational(Fraction(0), Fraction(-1, 2))}
    )
    for (p, l), coeff in e.terms.items():
        base = [(zp, coeff * c) for zp, c in t_power_expansion(p)]
        if l == 0:
            for zp, c in base:
                add(zp, 0, c)
        elif l == 1:
            # ln T = sigma*i*pi/2 + ln z - sum_m w^m/(m z^m)
            for zp, c in base:
                add(zp, 0, c.scale(half_ipi))
                add(zp, 1, c)
                for m in range(1, order + zp + 1):
                    if zp - m < -order:
                        break
                    add(zp - m, 0, -(c * w_pows[m]).scale(_cc(Fraction(1, m))))
        else:
            raise ValueError("log powers above 1 are never needed here")
    return SymExpr(out, order)


def clim2d(e_upper: SymExpr, e_lower: SymExpr) -> Poly:
    """Two-dimensional generalized limit of the combined expression.

    Rules, in order: (1) every term with positive z- or zt-power is an
    averaging eigenfunction and is dropped; (2) negative powers vanish;
    (3) logarithms at power zero must pair between the families with exactly
    opposite coefficients (they assemble into ln(z/zt), whose limit is taken
    as zero); a leftover unpaired logarithm raises LogDivergenceError;
    (4) the surviving constant term is returned.
    """
    combined = e_upper + e_lower
    const = Poly()
    log_coeffs: dict[tuple[int, int], Poly] = {}
    for (fam, p, l), poly in combined.terms.items():
        if p >= 1:
            continue  # averaging eigenfunctions: limit 0
        if p <= -1:
            continue  # o(1)
        if l == 0:
            const = const + poly
        else:
            log_coeffs[(fam, l)] = log_coeffs.get((fam, l), Poly()) + poly
    for (fam, l), poly in sorted(log_coeffs.items()):
        if fam != UPPER:
            continue
        partner = log_coeffs.get((LOWER, l), Poly())
        if (poly + partner).is_zero():
            continue
        raise LogDivergenceError(
            f"unpaired ln^{l} at power zero: no generalized limit"
        )
    for (fam, l), poly in log_coeffs.items():
        if fam == LOWER and (log_coeffs.get((UPPER, l), Poly()) + poly).is_zero():
            continue
        if fam == LOWER:
            raise LogDivergenceError(
                f"unpaired ln^{l} at power zero: no generalized limit"
            )
    for c in const.coeffs:
        c.assert_reporting_basis("clim2d constant term")
    return const


# ---------------------------------------------------------------------------
# Counting-function expressions in T.
# ---------------------------------------------------------------------------


def ncheck_series() -> LaurentLog:
    """Ncheck(T) = (T/2pi) ln(T/2pi) - T/2pi + 7/8 as an exact Laurent-log
    expression (the composite logs are split, so pi^-1 ln2 and pi^-1 lnpi
    coefficients appear; they cancel in every limit)."""
    half_inv_pi = Fraction(1, 2)
    return LaurentLog(
        {
            (1, 1): Poly([ConstCombo({MON_PI_INV: half_inv_pi})]),
            (1, 0): Poly(
                [
                    ConstCombo(
                        {
                            MON_PI_INV: -half_inv_pi,
                            (-1, 1, 0, 0, 0): -half_inv_pi,
                            (-1, 0, 1, 0, 0): -half_inv_pi,
                        }
                    )
                ]
            ),
            (0, 0): _poly([Fraction(7, 8)]),
        }
    )


def ncheck_antiderivatives() -> tuple[LaurentLog, LaurentLog, LaurentLog]:
    """(Ncheck, Ncheck_1, Ncheck_2): the counting form and its first two
    antiderivatives from 0, all exact."""
    n0 = ncheck_series()
    n1 = n0.integrate()
    n2 = n1.integrate()
    return n0, n1, n2


def ncheck_combination(mu: int) -> LaurentLog:
    """The T-space combination whose limit carries the mu-ledger:

    mu =  0:  Ncheck
    mu = -1:  T Ncheck - Ncheck_1
    mu = -2:  T^2 Ncheck - 2 T Ncheck_1 + 2 Ncheck_2
    """
    n0, n1, n2 = ncheck_antiderivatives()
    if mu == 0:
        return n0
    if mu == -1:
        return n0.shift_power(1) - n1
    if mu == -2:
        return n0.shift_power(2) - n1.shift_power(1).scale(2) + n2.scale(2)
    raise ValueError("supported ledgers: mu in {0, -1, -2}")


def delta_combination(mu: int, delta: DeltaAsymptotics | None = None) -> LaurentLog:
    """(1/pi) x the delta-term combination for the mu-ledger, as an exact
    asymptotic Laurent-log expression in T."""
    if delta is None:
        delta = delta_asymptotics()
    if mu == -1:
        data = delta.mu1_combination()
    elif mu == -2:
        data = delta.mu2_combination()
    else:
        raise ValueError("delta terms enter the ledgers only for mu in {-1, -2}")
    inv_pi = ConstCombo({MON_PI_INV: 1})
    return LaurentLog(
        {key: Poly([combo * inv_pi]) for key, combo in data.items()}
    )


# ---------------------------------------------------------------------------
# Trivial roots and the pole.
# ---------------------------------------------------------------------------


def zeta_nonpositive_via_clim(n: int) -> GaussianRational:
    """zeta(-n) derived from the generalized limit of the power-sum
    staircase: Clim b_{n+1}(k) via the monomial closed form."""
    return clim_poly(KAlphaPoly.from_k_poly(power_sum_poly(n + 1)))


def trivial_contribution(mu: int) -> Poly:
    """sum over trivial roots of (s0 - r_i)^(-mu) = 2^n zeta_H(s0/2, -n) with
    n = -mu, assembled from the dilated staircase: the generalized value of
    the full staircase is zeta(-n) (via clim_poly) and the shifted partial
    sum subtracts the power-sum polynomial at s0/2."""
    if mu not in (0, -1, -2):
        raise ValueError("supported ledgers: mu in {0, -1, -2}")
    n = -mu
    zeta_val = zeta_nonpositive_via_clim(n)
    b = power_sum_poly(n + 1)  # polynomial in k
    # b evaluated at k = s0/2: coefficient_i * (1/2)^i
    coeffs = [
        _cc(c * GaussianRational(Fraction(1, 2**i))) for i, c in enumerate(b.coeffs)
    ]
    shifted = Poly(coeffs)
    out = (Poly([_cc(zeta_val)]) - shifted).scale(_cc(Fraction(2**n)))
    return out


def pole_contribution(mu: int) -> Poly:
    """The simple pole at 1 contributes -(s0 - 1)^n with n = -mu."""
    if mu not in (0, -1, -2):
        raise ValueError("supported ledgers: mu in {0, -1, -2}")
    n = -mu
    base = _poly([-1, 1])  # s0 - 1
    out = Poly([_cc(1)])
    for _ in range(n):
        out = out * base
    return -out


def trivial_pole_contribution(mu: int) -> Poly:
    """Combined trivial-root and pole polynomial for the mu-ledger."""
    return trivial_contribution(mu) + pole_contribution(mu)


# ---------------------------------------------------------------------------
# Non-trivial-root assembly and the ledgers.
# ---------------------------------------------------------------------------


@dataclass
class PolyX:
    """Polynomial in s0 plus an optional multiple of the opaque symbol
    X_eps (the generalized sum of squared off-line deviations)."""

    poly: Poly = field(default_factory=Poly)
    x_eps: GaussianRational = field(default_factory=GaussianRational)

    def __add__(self, other: "PolyX") -> "PolyX":
        return PolyX(self.poly + other.poly, self.x_eps + other.x_eps)

    def is_zero(self) -> bool:
        return self.poly.is_zero() and self.x_eps.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyX)
            and self.poly == other.poly
            and self.x_eps == other.x_eps
        )

    def __str__(self) -> str:
        if self.x_eps.is_zero():
            return str(self.poly)
        if self.poly.is_zero():
            return f"({self.x_eps})*X_eps"
        return f"{self.poly} + ({self.x_eps})*X_eps"


def _as_polyx(p: Poly) -> PolyX:
    return PolyX(poly=p)


def nt_ncheck_moment(order: int = DEFAULT_ORDER) -> Poly:
    """Counting-form part of the first-moment limit (difference of the upper
    and lower families)."""
    comb = ncheck_combination(-1)
    return clim2d(substitute_T(comb, "upper", order), -substitute_T(comb, "lower", order))


def nt_delta_moment(delta=None, order: int = DEFAULT_ORDER) -> Poly:
    comb = delta_combination(-1, delta)
    return clim2d(substitute_T(comb, "upper", order), -substitute_T(comb, "lower", order))


def mu_minus1_gamma_moment(order: int = DEFAULT_ORDER) -> Poly:
    """The generalized first moment sum M_i gamma_i extracted from the
    mu = -1 assembly: i * (-s0^2/4 + s0/4 - 1/12)."""
    return nt_ncheck_moment(order) + nt_delta_moment(None, order)


def nt_contribution(
    mu: int,
    delta: DeltaAsymptotics | None = None,
    assume_S: bool = True,
    order: int = DEFAULT_ORDER,
) -> dict[str, PolyX]:
    """Named non-trivial-root contributions for the mu-ledger.

    The S-terms are dropped only under the stated growth estimates; refusing
    assume_S raises with the estimate's name.
    """
    if mu not in (0, -1, -2):
        raise ValueError("supported ledgers: mu in {0, -1, -2}")
    if mu in (-1, -2) and not assume_S:
        estimate = "S2_estimate" if mu == -1 else "S3_estimate"
        raise AssumptionRequired(f"ledger mu={mu} requires {estimate} (S-terms dropped)")
    if delta is None:
        delta = delta_asymptotics()
    n0_comb = ncheck_combination(0)
    nt0 = clim2d(
        substitute_T(n0_comb, "upper", order), substitute_T(n0_comb, "lower", order)
    )
    zero = PolyX()
    if mu == 0:
        return {
            "NT_Ncheck": _as_polyx(nt0),
            "NT_S": zero,
            "NT_delta": PolyX(),
            "NT_log2d": PolyX(),
        }
    w = poly_w()
    i_scalar = _cc(GR_I)
    if mu == -1:
        m_n = nt_ncheck_moment(order)
        m_d = nt_delta_moment(delta, order)
        # sum M_i (s0 - rho_i) = w * NT0 - i * (moment)
        nt_ncheck = (w * nt0) + (-(m_n.scale(i_scalar)))
        nt_delta = -(m_d.scale(i_scalar))
        return {
            "NT_Ncheck": _as_polyx(nt_ncheck),
            "NT_S": zero,
            "NT_delta": _as_polyx(nt_delta),
            "NT_log2d": PolyX(),
        }
    # mu == -2
    m_n = nt_ncheck_moment(order)
    m_d = nt_delta_moment(delta, order)
    big_comb = ncheck_combination(-2)
    big_n = clim2d(
        substitute_T(big_comb, "upper", order), substitute_T(big_comb, "lower", order)
    )
    d_comb = delta_combination(-2, delta)
    big_d = clim2d(
        substitute_T(d_comb, "upper", order), substitute_T(d_comb, "lower", order)
    )
    two_i_w = (w).scale(_cc(GaussianRational(Fraction(0), Fraction(2))))
    nt_ncheck = (w * w * nt0) + (-(two_i_w * m_n)) + (-big_n)
    nt_delta = (-(two_i_w * m_d)) + (-big_d)
    return {
        "NT_Ncheck": PolyX(poly=nt_ncheck, x_eps=GR_ONE),
        "NT_S": zero,
        "NT_delta": _as_polyx(nt_delta),
        "NT_log2d": PolyX(),
    }


def naive_mu_minus1_nt(order: int = DEFAULT_ORDER) -> Poly:
    """The 'conjugate pairs cancel the gamma-sum' shortcut: (s0 - 1/2) * NT0.

    This does NOT cancel the trivial+pole polynomial -- the apparent paradox
    that forces the careful two-family treatment."""
    n0_comb = ncheck_combination(0)
    nt0 = clim2d(
        substitute_T(n0_comb, "upper", order), substitute_T(n0_comb, "lower", order)
    )
    return poly_w() * nt0


@dataclass
class LedgerReport:
    mu: int
    contributions: dict[str, PolyX]
    total: PolyX
    assumptions: dict[str, bool]

    def to_json_dict(self) -> dict:
        return {
            "mu": self.mu,
            "contributions": {k: str(v) for k, v in self.contributions.items()},
            "total": str(self.total),
            "assumptions": dict(self.assumptions),
        }


def ledger(mu: int, assume_S: bool = True, order: int = DEFAULT_ORDER) -> LedgerReport:
    """Full root-side ledger for mu in {0, -1, -2}.

    Totals: 0 for mu = 0 and mu = -1; -1/2 + X_eps for mu = -2 (all exact)."""
    contributions = {
        "trivial": _as_polyx(trivial_contribution(mu)),
        "pole": _as_polyx(pole_contribution(mu)),
    }
    contributions.update(nt_contribution(mu, assume_S=assume_S, order=order))
    total = PolyX()
    for v in contributions.values():
        total = total + v
    for c in total.poly.coeffs:
        c.assert_reporting_basis("ledger total")
        if not c.is_rational():
            raise AssertionError(f"non-rational constant survived in ledger: {c}")
    assumptions = {
        "clim_ln_ratio_zero": True,
        "S2_estimate": mu <= -1,
        "S3_estimate": mu <= -2,
    }
    return LedgerReport(mu=mu, contributions=contributions, total=total, assumptions=assumptions)
