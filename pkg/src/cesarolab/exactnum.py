"""Exact arithmetic: big rationals, Gaussian rationals, dense polynomials and
exact linear combinations of transcendental constants.

Rationals are `fractions.Fraction` (unbounded integers, always reduced).
Everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

PI = math.pi
LN2 = math.log(2.0)
LNPI = math.log(math.pi)
# Euler-Mascheroni constant, 30 digits.
EULER_GAMMA = 0.577215664901532860606512090082

_RationalLike = Union[int, Fraction]


class BasisError(ValueError):
    """A constant-combination operation left the declared monomial basis."""


def rational_arith(a: Rational, b: Rational, op: str) -> Rational:
    """Exact rational arithmetic; op is one of add/sub/mul/div."""
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def parse_rational(text: str) -> Rational:
    return Fraction(text.strip())


def format_rational(x: Rational) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: "GaussianLike") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))

    def __add__(self, other: "GaussianLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussianLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "GaussianLike") -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "GaussianLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return GaussianRational(Fraction(1)) / self ** (-n)
        out = GaussianRational(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}*i"


GaussianLike = Union[int, Fraction, GaussianRational]

GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))
GR_I = GaussianRational(Fraction(0), Fraction(1))

_REAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_IMAG_RE = re.compile(r"^(?P<sign>[+-]?)(?:(?P<mag>\d+(?:/\d+)?)\*?)?i$")
_BOTH_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)(?P<im>[+-](?:\d+(?:/\d+)?\*?)?i)$"
)


def _parse_imag(text: str) -> Fraction:
    m = _IMAG_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse imaginary part {text!r}")
    mag = Fraction(m.group("mag")) if m.group("mag") else Fraction(1)
    return -mag if m.group("sign") == "-" else mag


def parse_gaussian(text: str) -> GaussianRational:
    s = text.strip().replace(" ", "")
    if _REAL_RE.match(s):
        return GaussianRational(Fraction(s))
    if _IMAG_RE.match(s):
        return GaussianRational(Fraction(0), _parse_imag(s))
    m = _BOTH_RE.match(s)
    if m:
        return GaussianRational(Fraction(m.group("re")), _parse_imag(m.group("im")))
    raise ValueError(f"cannot parse GaussianRational from {text!r}")


NEG_INF = float("-inf")


class Poly:
    """Dense univariate polynomial; the variable's role is up to the owner.

    Coefficients are GaussianRational (or any ring element with +,*,is_zero).
    Canonical form: no trailing zero coefficient; the zero polynomial has
    degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):  # index = degree
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def x(ring_one=GR_ONE) -> "Poly":
        return Poly([_zero_like(ring_one), ring_one])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            if i < len(a) and i < len(b):
                out.append(a[i] + b[i])
            elif i < len(a):
                out.append(a[i])
            else:
                out.append(b[i])
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                p = a * b
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        return Poly([c if c is not None else _zero_like(self.coeffs[0]) for c in out])

    def scale(self, c) -> "Poly":
        return Poly([coef * c for coef in self.coeffs])

    def __call__(self, x):
        out = None
        for c in reversed(self.coeffs):
            out = c if out is None else out * x + c
        if out is None:
            return 0
        return out

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _zero_like(self.coeffs[0]) if self.coeffs else GR_ZERO

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self.coeffs])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*x")
            else:
                parts.append(f"({c})*x^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly[{self}]"


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def _zero_like(c):
    if isinstance(c, GaussianRational):
        return GR_ZERO
    if isinstance(c, ConstCombo):
        return ConstCombo()
    return type(c)(0)


def parse_poly(text: str) -> Poly:
    """Inverse of Poly.__str__ for GaussianRational coefficients."""
    s = text.strip()
    if s == "0":
        return Poly()
    coeffs: dict[int, GaussianRational] = {}
    for part in s.split(" + "):
        m = re.match(r"^\((?P<c>[^)]*)\)(?:\*x(?:\^(?P<k>\d+))?)?$", part.strip())
        if not m:
            raise ValueError(f"cannot parse polynomial term {part!r}")
        k = 0
        if part.strip().endswith("x"):
            k = 1
        if m.group("k"):
            k = int(m.group("k"))
        coeffs[k] = parse_gaussian(m.group("c"))
    n = max(coeffs) + 1
    return Poly([coeffs.get(i, GR_ZERO) for i in range(n)])


# ---------------------------------------------------------------------------
# Exact combinations of transcendental constants.
# ---------------------------------------------------------------------------

# Monomial key: exponents of (pi, ln2, lnpi, A, gamma).  pi may be -1..1,
# the others 0 or 1.  lnpi is not part of the reporting basis; it is only
# admitted so that composite logs like ln(2*pi) can be split during symbolic
# ledger work, and it must cancel from every reported constant
# (assert_reporting_basis enforces this).
Mon = tuple  # (pi, ln2, lnpi, A, gamma)

MON_ONE: Mon = (0, 0, 0, 0, 0)
MON_PI: Mon = (1, 0, 0, 0, 0)
MON_PI_INV: Mon = (-1, 0, 0, 0, 0)
MON_LN2: Mon = (0, 1, 0, 0, 0)
MON_LNPI: Mon = (0, 0, 1, 0, 0)
MON_A: Mon = (0, 0, 0, 1, 0)
MON_GAMMA: Mon = (0, 0, 0, 0, 1)

_PI_RANGE = (-1, 1)


def _check_mon(mon: Mon) -> Mon:
    pi_e, ln2_e, lnpi_e, a_e, g_e = mon
    if not (_PI_RANGE[0] <= pi_e <= _PI_RANGE[1]):
        raise BasisError(f"pi exponent {pi_e} outside declared range {_PI_RANGE}")
    for name, e in (("ln2", ln2_e), ("lnpi", lnpi_e), ("A", a_e), ("gamma", g_e)):
        if e not in (0, 1):
            raise BasisError(f"{name} exponent {e} outside {{0,1}}")
    return mon


_MON_NAMES = ("pi", "ln2", "lnpi", "A", "gamma")


def _mon_str(mon: Mon) -> str:
    if mon == MON_ONE:
        return "1"
    parts = []
    for name, e in zip(_MON_NAMES, mon):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class ConstCombo:
    """Exact Q(i)-linear combination over the monomial basis of constants
    {pi, 1/pi, ln2, A, gamma} (plus lnpi for intermediate ledger algebra).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mon, GaussianLike] | None = None):
        t: dict[Mon, GaussianRational] = {}
        if terms:
            for mon, coeff in terms.items():
                g = GaussianRational.of(coeff)
                if not g.is_zero():
                    t[_check_mon(tuple(mon))] = g
        self.terms = t

    # -- constructors ------------------------------------------------------
    @staticmethod
    def rational(x: GaussianLike) -> "ConstCombo":
        return ConstCombo({MON_ONE: GaussianRational.of(x)})

    @staticmethod
    def of(value: "ComboLike") -> "ConstCombo":
        if isinstance(value, ConstCombo):
            return value
        return ConstCombo.rational(value)

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(m == MON_ONE for m in self.terms)

    def rational_part(self) -> GaussianRational:
        return self.terms.get(MON_ONE, GR_ZERO)

    def coefficient(self, mon: Mon) -> GaussianRational:
        return self.terms.get(tuple(mon), GR_ZERO)

    def assert_reporting_basis(self, where: str = "") -> "ConstCombo":
        """Reported constants live over {pi^{+-1}, ln2, A, gamma} only."""
        for mon in self.terms:
            if mon[2] != 0:
                raise BasisError(f"lnpi survived in reported constant {where or self}")
        return self

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "ComboLike") -> "ConstCombo":
        o = ConstCombo.of(other)
        t = dict(self.terms)
        for mon, c in o.terms.items():
            s = t.get(mon, GR_ZERO) + c
            if s.is_zero():
                t.pop(mon, None)
            else:
                t[mon] = s
        out = ConstCombo()
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self) -> "ConstCombo":
        out = ConstCombo()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "ComboLike") -> "ConstCombo":
        return self + (-ConstCombo.of(other))

    def __rsub__(self, other: "ComboLike") -> "ConstCombo":
        return ConstCombo.of(other) - self

    def __mul__(self, other: "ComboLike") -> "ConstCombo":
        o = ConstCombo.of(other)
        out = ConstCombo()
        t: dict[Mon, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mon = _check_mon(tuple(a + b for a, b in zip(m1, m2)))
                s = t.get(mon, GR_ZERO) + c1 * c2
                if s.is_zero():
                    t.pop(mon, None)
                else:
                    t[mon] = s
        out.terms = t
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstCombo) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- numeric projection --------------------------------------------------
    def eval(self, A_value: float) -> complex:
        total = 0j
        for mon, c in self.terms.items():
            pi_e, ln2_e, lnpi_e, a_e, g_e = mon
            v = (
                PI**pi_e
                * LN2**ln2_e
                * LNPI**lnpi_e
                * A_value**a_e
                * EULER_GAMMA**g_e
            )
            total += c.to_complex() * v
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mon in sorted(self.terms):
            c = self.terms[mon]
            parts.append(f"({c})*{_mon_str(mon)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ConstCombo[{self}]"


ComboLike = Union[int, Fraction, GaussianRational, ConstCombo]


def const_combo_eval(c: ConstCombo, A_value: float) -> complex:
    """Floating projection of an exact constant combination."""
    return c.eval(A_value)


def combo_sub(x: ConstCombo, y: ConstCombo) -> ConstCombo:
    """Exact difference; cancellations (e.g. of ln2- and A-parts) are exact."""
    return x - y


def parse_combo(text: str) -> ConstCombo:
    s = text.strip()
    if s == "0":
        return ConstCombo()
    terms: dict[Mon, GaussianRational] = {}
    for part in s.split(" + "):
        m = re.match(r"^\((?P<c>[^)]*)\)\*(?P<mon>.+)$", part.strip())
        if not m:
            raise ValueError(f"cannot parse combo term {part!r}")
        mon_txt = m.group("mon")
        exps = [0, 0, 0, 0, 0]
        if mon_txt != "1":
            for factor in mon_txt.split("*"):
                if "^" in factor:
                    name, e_txt = factor.split("^")
                    e = int(e_txt)
                else:
                    name, e = factor, 1
                exps[_MON_NAMES.index(name)] = e
        terms[tuple(exps)] = parse_gaussian(m.group("c"))
    return ConstCombo(terms)


# Named constants used throughout the ledger.
def combo_C1() -> ConstCombo:
    """5/32 + (17/48) ln2 + 2A: the constant term of the first antiderivative
    of the zero-count correction delta."""
    return ConstCombo(
        {MON_ONE: Fraction(5, 32), MON_LN2: Fraction(17, 48), MON_A: 2}
    )


def combo_B() -> ConstCombo:
    """13/96 + (17/48) ln2 + 2A: the linear-term constant of the second
    antiderivative of delta."""
    return ConstCombo(
        {MON_ONE: Fraction(13, 96), MON_LN2: Fraction(17, 48), MON_A: 2}
    )


def combo_D() -> ConstCombo:
    """1/48 - 2 C1 + 2 B; the ln2- and A-parts cancel exactly to -1/48."""
    return ConstCombo.rational(Fraction(1, 48)) - 2 * combo_C1() + 2 * combo_B()
