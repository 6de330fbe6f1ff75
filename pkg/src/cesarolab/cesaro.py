"""Generalized Cesaro convergence engine.

Two routes to a generalized limit live here:

* closed forms for monomials k^n * alpha^r (position x = k + alpha along the
  ray), extended linearly to bivariate polynomials;
* a numeric engine for piecewise-constant partial-sum functions: estimate the
  divergent template z^rho (ln z)^m in the geometric variable on the trailing
  window (or accept exactly known coefficients), subtract, average along the
  ray, and iterate.

Every averaging pass is exact: an averaged staircase stays inside the
per-region span {u^d} + {ln^m(u)/u}, which is closed under the averaging
operator, and template terms are generalized eigenfunctions whose averages
have closed forms.  Integer-power template subtractions are absorbed directly
into the per-region polynomials so that cancellations happen locally instead
of between huge global quantities.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bernoulli import bernoulli_poly_coeffs
from .exactnum import GR_ZERO, GaussianRational, Poly

_TREND_FRACTIONS = (0.55, 0.65, 0.75, 0.85, 0.97)
_COND_LIMIT = 1e12
_FIT_SUBSAMPLE = 30000


class TemplateDegenerateError(ValueError):
    """The eigenfunction template produced an ill-conditioned fit."""


# ---------------------------------------------------------------------------
# Exact route: Clim of k^n alpha^r and of bivariate polynomials.
# ---------------------------------------------------------------------------


def clim_monomial(n: int, r: int) -> Fraction:
    """Generalized Cesaro limit of k^n alpha^r: exactly (-1)^n / (n+r+1)."""
    if n < 0 or r < 0:
        raise ValueError("monomial exponents must be non-negative")
    return Fraction((-1) ** n, n + r + 1)


class KAlphaPoly:
    """Bivariate polynomial in the integer part k and fractional part alpha."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        t: dict[tuple[int, int], GaussianRational] = {}
        if terms:
            for (n, r), c in terms.items():
                g = GaussianRational.of(c)
                if not g.is_zero():
                    if n < 0 or r < 0:
                        raise ValueError("exponents must be non-negative")
                    t[(n, r)] = g
        self.terms = t

    @staticmethod
    def from_k_poly(p: Poly) -> "KAlphaPoly":
        return KAlphaPoly({(n, 0): c for n, c in enumerate(p.coeffs)})

    def __add__(self, other: "KAlphaPoly") -> "KAlphaPoly":
        t = dict(self.terms)
        for key, c in other.terms.items():
            s = t.get(key, GR_ZERO) + c
            if s.is_zero():
                t.pop(key, None)
            else:
                t[key] = s
        out = KAlphaPoly()
        out.terms = t
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, KAlphaPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))


def clim_poly(p: KAlphaPoly) -> GaussianRational:
    """Term-wise generalized limit of a polynomial in (k, alpha)."""
    out = GR_ZERO
    for (n, r), c in p.terms.items():
        out = out + c * clim_monomial(n, r)
    return out


# ---------------------------------------------------------------------------
# Step functions on a ray.
# ---------------------------------------------------------------------------


class StepFunction:
    """Piecewise-constant partial-sum function along a ray.

    ``positions`` are strictly increasing arc-length positions of jumps and
    ``values[i]`` is the value on ``[positions[i], positions[i+1])``.  Before
    the first jump the function equals ``initial`` (extended back to 0).
    """

    __slots__ = ("start", "initial", "positions", "values", "_prefix")

    def __init__(
        self,
        positions: Sequence[float],
        values: Sequence[complex],
        initial: complex = 0.0,
        start: float = 0.0,
    ):
        pos = np.asarray(positions, dtype=float)
        vals = np.asarray(values, dtype=complex)
        if pos.ndim != 1 or pos.shape != vals.shape:
            raise ValueError("positions and values must be 1-d and equal length")
        if pos.size == 0:
            raise ValueError("a step function needs at least one jump")
        if not np.all(np.diff(pos) > 0):
            raise ValueError("jump positions must be strictly increasing")
        if pos[0] <= start:
            raise ValueError("first jump must lie beyond the ray origin")
        if pos[0] <= 0:
            raise ValueError("jump positions must be positive")
        self.start = float(start)
        self.initial = complex(initial)
        self.positions = pos
        self.values = vals
        self._prefix = None

    @staticmethod
    def from_increments(
        positions: Sequence[float], increments: Sequence[complex], initial: complex = 0.0
    ) -> "StepFunction":
        vals = initial + np.cumsum(np.asarray(increments, dtype=complex))
        return StepFunction(positions, vals, initial=initial)

    @property
    def end(self) -> float:
        return float(self.positions[-1])

    def value_at(self, t):
        """Right-continuous evaluation (vectorized)."""
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.positions, t, side="right")
        ext = np.concatenate(([self.initial], self.values))
        return ext[idx]

    def _prefix_integral(self) -> np.ndarray:
        if self._prefix is None:
            pos = self.positions
            widths = np.diff(pos)
            pieces = self.values[:-1] * widths
            head = self.initial * pos[0]
            self._prefix = np.concatenate(([head], head + np.cumsum(pieces)))
        return self._prefix

    def cumulative_integral(self, t):
        """Exact integral of f over [0, t] (vectorized in t)."""
        t = np.asarray(t, dtype=float)
        pos = self.positions
        prefix = self._prefix_integral()
        idx = np.searchsorted(pos, t, side="right")
        out = np.where(idx == 0, self.initial * t, 0).astype(complex)
        inside = idx > 0
        ii = idx[inside] - 1
        out[inside] = prefix[ii] + self.values[ii] * (t[inside] - pos[ii])
        return out

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(
                [f"{self.start:.17g}", f"{self.initial.real:.17g}", f"{self.initial.imag:.17g}"]
            )
            for p, v in zip(self.positions, self.values):
                w.writerow([f"{p:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])

    @staticmethod
    def from_csv(path) -> "StepFunction":
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r]
        if len(rows) < 2:
            raise ValueError("step-function CSV needs a header row and one jump")
        start, ir, im = (float(x) for x in rows[0])
        pos, vals = [], []
        for r in rows[1:]:
            pos.append(float(r[0]))
            vals.append(complex(float(r[1]), float(r[2])))
        return StepFunction(pos, vals, initial=complex(ir, im), start=start)


def average(f: StepFunction, t: float) -> complex:
    """The averaging operator P[f](t) = (1/t) * integral_0^t f, exactly."""
    if t <= f.start:
        raise ValueError("averaging point must lie beyond the ray origin")
    return complex(f.cumulative_integral(np.array([t]))[0]) / t


def dilate(f: StepFunction, r: float) -> StepFunction:
    """Scale jump positions by r > 0, keeping values."""
    if r <= 0:
        raise ValueError("dilation factor must be positive")
    return StepFunction(f.positions * r, f.values, initial=f.initial, start=f.start * r)


# ---------------------------------------------------------------------------
# Templates.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TemplateTerm:
    rho: complex
    m: int = 0


class EigenTemplate:
    """Candidate divergent terms z^rho (ln z)^m to remove before averaging.

    (rho, m) = (0, 0) is excluded: the constant is the limit itself.  Terms
    must be integrable at the origin (Re rho > -1).
    """

    def __init__(self, terms: Iterable[TemplateTerm | tuple] = ()):
        ts = []
        for t in terms:
            if not isinstance(t, TemplateTerm):
                t = TemplateTerm(complex(t[0]), int(t[1]) if len(t) > 1 else 0)
            ts.append(t)
        keys = [(complex(t.rho), t.m) for t in ts]
        if len(set(keys)) != len(keys):
            raise ValueError("template terms must be distinct")
        for t in ts:
            if t.m < 0:
                raise ValueError("log power must be non-negative")
            if t.rho == 0 and t.m == 0:
                raise ValueError("(rho=0, m=0) is the limit itself, not a template term")
            if complex(t.rho).real <= -1:
                raise ValueError("template terms must be integrable at the origin")
        self.terms = tuple(ts)

    def __len__(self) -> int:
        return len(self.terms)

    def max_log_power(self) -> int:
        return max((t.m for t in self.terms), default=0)


@dataclass
class ClimResult:
    """Outcome of the numeric engine.

    ``residual_trend`` holds |iterate(t_i) - value| at trailing abscissae;
    the result is convergent when the final residual is below tolerance and
    the trend does not grow (tiny residuals are accepted even if they
    fluctuate below tolerance).
    """

    value: complex
    residual_trend: list[float]
    depth: int
    fitted_coefficients: list[complex]
    converged: bool
    tol: float = 1e-3


# ---------------------------------------------------------------------------
# Exact averaged-iterate representations.
# ---------------------------------------------------------------------------


def _kahan_cumsum(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    s = x.dtype.type(0)
    c = x.dtype.type(0)
    for i in range(x.size):
        y = x[i] - c
        t = s + y
        c = (t - s) - y
        s = t
        out[i] = s
    return out


class _PiecewiseIterate:
    """Averaged iterates of (staircase - absorbed polynomial), exactly.

    On each region between jump positions the iterate is
    ``sum_d poly[d] u^d + sum_m logdiv[m] ln(u)^m / u``; this span is closed
    under the averaging operator.
    """

    def __init__(self, f: StepFunction, dtype):
        self.dtype = dtype
        self.pos = f.positions.astype(
            np.longdouble if dtype == np.clongdouble else float
        )
        n = f.positions.size + 1
        self.poly = np.zeros((n, 1), dtype=dtype)
        self.poly[:, 0] = np.concatenate(([f.initial], f.values)).astype(dtype)
        self.logdiv = np.zeros((n, 0), dtype=dtype)

    def absorb_power(self, d: int, c) -> None:
        """Subtract c * u^d from the represented function (d >= 1)."""
        D = self.poly.shape[1]
        if D <= d:
            pad = np.zeros((self.poly.shape[0], d + 1 - D), dtype=self.dtype)
            self.poly = np.concatenate([self.poly, pad], axis=1)
        self.poly[:, d] -= c

    def _anti(self, u, logu, regions):
        v = np.zeros_like(u, dtype=self.dtype)
        D = self.poly.shape[1]
        for d in range(D - 1, -1, -1):
            v = v * u + self.poly[regions, d] / (d + 1)
        v = v * u
        for m in range(self.logdiv.shape[1]):
            v = v + self.logdiv[regions, m] * logu ** (m + 1) / (m + 1)
        return v

    def _boundary(self):
        pos = self.pos
        n = self.poly.shape[0]
        zero = pos.dtype.type(0)
        b = np.concatenate(([zero], pos))
        logb = np.concatenate(([zero], np.log(pos)))
        js = np.arange(n - 1)
        full = self._anti(pos, np.log(pos), js) - self._anti(b[:-1], logb[:-1], js)
        cum = np.concatenate(([self.dtype(0)], _kahan_cumsum(full)))
        leftv = np.zeros(n, dtype=self.dtype)
        if n > 1:
            leftv[1:] = self._anti(b[1:], logb[1:], np.arange(1, n))
        return cum, leftv

    def eval(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=self.pos.dtype)
        r = np.searchsorted(self.pos, t, side="right")
        out = np.zeros(t.shape, dtype=self.dtype)
        for d in range(self.poly.shape[1] - 1, -1, -1):
            out = out * t + self.poly[r, d]
        if self.logdiv.shape[1]:
            lt = np.log(t)
            pw = np.ones_like(t, dtype=self.dtype)
            for m in range(self.logdiv.shape[1]):
                out += self.logdiv[r, m] * pw / t
                pw = pw * lt
        return out

    def apply_P(self) -> None:
        n = self.poly.shape[0]
        D = self.poly.shape[1]
        L = self.logdiv.shape[1]
        cum, leftv = self._boundary()
        Cj = cum - leftv
        self.poly = self.poly / (np.arange(D) + 1).astype(self.dtype)
        new = np.zeros((n, L + 1), dtype=self.dtype)
        new[:, 0] = Cj
        for m in range(L):
            new[:, m + 1] += self.logdiv[:, m] / (m + 1)
        self.logdiv = new


class _SmoothPart:
    """Exact generalized-eigenfunction component sum_j c_j z^rho (ln z)^m.

    The span is preserved by the averaging operator:
    P[t^rho ln^m t] = t^rho * (polynomial of degree m in ln t).
    """

    def __init__(self):
        self.terms: dict[tuple[complex, int], complex] = {}

    def add(self, rho: complex, m: int, c: complex) -> None:
        key = (complex(rho), int(m))
        self.terms[key] = self.terms.get(key, 0.0) + c

    def eval(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        lt = np.log(t)
        for (rho, m), c in self.terms.items():
            if c == 0:
                continue
            base = np.exp(rho * lt) if rho != 0 else 1.0
            out += c * base * lt**m
        return out

    def apply_P(self) -> None:
        new: dict[tuple[complex, int], complex] = {}

        def put(rho, m, c):
            key = (rho, m)
            new[key] = new.get(key, 0.0) + c

        for (rho, m), c in self.terms.items():
            if c == 0:
                continue
            if rho == 0 and m == 0:
                put(rho, 0, c)
                continue
            for i, ci in enumerate(_antiderivative_log_coeffs(rho, m)):
                put(rho, i, c * ci)
        self.terms = new


def _antiderivative_log_coeffs(rho: complex, m: int) -> list[complex]:
    """Coefficients e_i with integral_0^t u^rho ln^m u du = t^(rho+1) sum e_i ln^i t,
    valid for Re rho > -1.

    Recursion: I(rho, j) = t^(rho+1) ln^j t/(rho+1) - j/(rho+1) * I(rho, j-1).
    """

    def rec(j: int) -> list[complex]:
        base = [0.0] * (j + 1)
        base[j] = 1.0 / (rho + 1)
        if j == 0:
            return base
        lower = rec(j - 1)
        for i, ci in enumerate(lower):
            base[i] -= (j / (rho + 1)) * ci
        return base

    return rec(m)


# ---------------------------------------------------------------------------
# Fitting.
# ---------------------------------------------------------------------------


def _fit_template(template: EigenTemplate, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Least squares for template coefficients.

    A constant column and slowly-decaying nuisance columns (1/x, ln x/x) are
    fitted alongside to de-bias the template coefficients; neither is ever
    subtracted.
    """
    cols = []
    lx = np.log(x)
    for t in template.terms:
        cols.append(np.exp(complex(t.rho) * lx) * lx**t.m)
    cols.append(np.ones_like(x, dtype=complex))
    cols.append(1.0 / x)
    cols.append(lx / x)
    A = np.column_stack(cols)
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    As = A / scale
    if len(template) and np.linalg.cond(As) > _COND_LIMIT:
        raise TemplateDegenerateError("template degenerate")
    coef, *_ = np.linalg.lstsq(As, y.astype(complex), rcond=None)
    coef = coef / scale
    return coef[: len(template)]


def _segment_midpoints(f: StepFunction, lo: float) -> np.ndarray:
    pos = f.positions
    mids = 0.5 * (pos[:-1] + pos[1:])
    return mids[mids >= lo]


# ---------------------------------------------------------------------------
# The numeric engine.
# ---------------------------------------------------------------------------


def numeric_clim(
    f: StepFunction,
    template: EigenTemplate | Iterable = (),
    depth: int | None = None,
    fit_window: float = 0.5,
    tol: float = 1e-3,
    coefficients: Sequence[complex] | None = None,
    extended_precision: bool = False,
) -> ClimResult:
    """Generalized Cesaro limit of a partial-sum step function.

    Runs ``depth`` passes; each pass estimates the template coefficients on
    the trailing window at geometric positions (unless exact ``coefficients``
    are supplied, in which case they are subtracted once up front), subtracts
    them, and applies the averaging operator exactly.

    A non-decreasing residual trend marks the result non-convergent; a pure
    ln z component (which no template can remove) surfaces this way.
    """
    if not isinstance(template, EigenTemplate):
        template = EigenTemplate(template)
    if not 0 < fit_window < 1:
        raise ValueError("fit_window must be in (0, 1)")
    if depth is None:
        depth = min(4, 2 + template.max_log_power())
    if depth < 1:
        raise ValueError("depth must be >= 1")

    T = f.end
    window_lo = T * (1.0 - fit_window)
    mids = _segment_midpoints(f, window_lo)
    needed = max(2 * len(template), 2)
    if mids.size < needed:
        raise ValueError(f"fit window holds {mids.size} jumps, need at least {needed}")
    if mids.size > _FIT_SUBSAMPLE:
        mids = mids[:: mids.size // _FIT_SUBSAMPLE + 1]

    dtype = np.clongdouble if extended_precision else np.complex128
    pw = _PiecewiseIterate(f, dtype)
    smooth = _SmoothPart()
    fitted0: list[complex] = []

    def absorb(term: TemplateTerm, aj: complex) -> None:
        rho = complex(term.rho)
        if term.m == 0 and rho.imag == 0 and rho.real >= 1 and rho.real.is_integer():
            pw.absorb_power(int(rho.real), dtype(aj))
        else:
            smooth.add(term.rho, term.m, -aj)

    if coefficients is not None:
        if len(coefficients) != len(template):
            raise ValueError("need one coefficient per template term")
        fitted0 = [complex(a) for a in coefficients]
        for term, aj in zip(template.terms, coefficients):
            absorb(term, complex(aj))
        for _ in range(depth):
            pw.apply_P()
            smooth.apply_P()
    else:
        for i in range(depth):
            ys = np.asarray(pw.eval(mids), dtype=complex) + smooth.eval(mids)
            coef = (
                _fit_template(template, mids, ys)
                if len(template)
                else np.zeros(0, complex)
            )
            if i == 0:
                fitted0 = list(coef)
            for term, aj in zip(template.terms, coef):
                absorb(term, aj)
            pw.apply_P()
            smooth.apply_P()

    def iterate_at(t: np.ndarray) -> np.ndarray:
        return np.asarray(pw.eval(t), dtype=complex) + smooth.eval(t)

    value = complex(iterate_at(np.array([T]))[0])
    trend_pts = np.array([frac * T for frac in _TREND_FRACTIONS])
    trend = [float(abs(v - value)) for v in iterate_at(trend_pts)]
    tol_eff = tol * (1.0 + abs(value))
    tail = trend[-3:]
    non_increasing = all(tail[j + 1] <= tail[j] * 1.0000001 for j in range(len(tail) - 1))
    tiny = all(r < tol_eff for r in tail)
    converged = trend[-1] < tol_eff and (non_increasing or tiny)
    return ClimResult(
        value=value,
        residual_trend=trend,
        depth=depth,
        fitted_coefficients=fitted0,
        converged=converged,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Helpers for oracle comparisons against clim_monomial.
# ---------------------------------------------------------------------------


def sample_k_alpha_monomial(n: int, r: int, k_max: int, per_unit: int = 8) -> StepFunction:
    """Midpoint-sampled staircase of k^n alpha^r on [0, k_max]."""
    cells = np.arange(k_max * per_unit)
    left = cells / per_unit
    mid_alpha = (cells % per_unit + 0.5) / per_unit
    k = np.floor(left)
    vals = k.astype(float) ** n * mid_alpha**r
    return StepFunction(left[1:], vals[1:], initial=vals[0])


def default_power_template(n: int) -> EigenTemplate:
    """Template {z^j : 1 <= j <= n} used when comparing against clim_monomial."""
    return EigenTemplate([TemplateTerm(float(j), 0) for j in range(1, n + 1)])


def faulhaber_template(unit_means: Sequence[Fraction]) -> list[Fraction]:
    """Exact power-template coefficients from per-unit integral structure.

    Given that the per-unit integrals of a staircase form the polynomial
    sum_a unit_means[a] * k^a, return coefficients c_1..c_n (constant term
    dropped) of the continuous polynomial with the same per-unit integrals,
    built from Bernoulli polynomials: the antiderivative condition
    F(k+1) - F(k) = k^a is solved by F = B_{a+1}(x)/(a+1).
    """
    n = len(unit_means) - 1
    coeffs = [Fraction(0)] * (n + 1)
    for a, m_a in enumerate(unit_means):
        if m_a == 0:
            continue
        # d/dx of B_{a+1}(x)/(a+1) is B_a(x)
        ba = bernoulli_poly_coeffs(a)
        for d, c in enumerate(ba.coeffs):
            coeffs[d] += Fraction(m_a) * c.re
    return coeffs[1:]


def discrete_phase_mean(s: int, per_unit: int) -> Fraction:
    """Mean of alpha^s over the midpoint phase lattice (2i+1)/(2*per_unit)."""
    return sum(Fraction(2 * i + 1, 2 * per_unit) ** s for i in range(per_unit)) / per_unit
