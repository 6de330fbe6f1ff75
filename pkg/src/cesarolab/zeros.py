"""Ingestion and persistence of non-trivial-zero ordinate tables, the
empirical counting function N(T), the empirical argument S(T), and
zero-sum primitives."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

from . import counting


class ZeroTableParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class ZeroTable:
    """Ascending positive ordinates of non-trivial zeros above the real axis."""

    ordinates: np.ndarray
    source: str
    count: int
    max_ordinate: float

    @staticmethod
    def from_ordinates(ordinates: np.ndarray, source: str) -> "ZeroTable":
        return ZeroTable(
            ordinates=ordinates,
            source=source,
            count=int(ordinates.size),
            max_ordinate=float(ordinates[-1]),
        )


def _cache_path(path: str) -> str:
    return path + ".cache.npz"


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def parse_zeros(path: str, use_cache: bool = True) -> ZeroTable:
    """Parse a text file with one ascending positive ordinate per line.

    Blank lines and '#' comments are skipped.  A binary sidecar keyed by the
    source digest avoids re-parsing large tables; it is rebuilt whenever the
    digest changes.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    digest = _digest(path)
    cache = _cache_path(path)
    if use_cache and os.path.exists(cache):
        try:
            with np.load(cache) as payload:
                if str(payload["digest"]) == digest:
                    return ZeroTable.from_ordinates(payload["ordinates"], path)
        except Exception:
            pass  # fall through to a clean parse
    ordinates = []
    prev = 0.0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            try:
                value = float(text.split()[0])
            except ValueError:
                raise ZeroTableParseError(f"not a number: {text!r}", lineno)
            if value <= 0:
                raise ZeroTableParseError(f"ordinate {value} is not positive", lineno)
            if value <= prev:
                raise ZeroTableParseError(
                    f"ordinate {value} does not ascend past {prev}", lineno
                )
            ordinates.append(value)
            prev = value
    if not ordinates:
        raise ZeroTableParseError("no ordinates found in file")
    arr = np.asarray(ordinates, dtype=float)
    if use_cache:
        try:
            np.savez(cache, digest=digest, ordinates=arr)
        except OSError:
            pass  # cache is best-effort
    return ZeroTable.from_ordinates(arr, path)


def sum_reciprocal_powers(zeros: ZeroTable, s0: complex, mu: int) -> complex:
    """sum_i [ (s0 - rho_i)^-mu + (s0 - conj(rho_i))^-mu ] with
    rho_i = 1/2 + i gamma_i placed on the critical line."""
    if mu < 1:
        raise ValueError("mu must be a positive integer")
    s0 = complex(s0)
    rho = 0.5 + 1j * zeros.ordinates
    d1 = s0 - rho
    d2 = s0 - np.conjugate(rho)
    if np.min(np.abs(d1)) < 1e-12 or np.min(np.abs(d2)) < 1e-12:
        raise ValueError("s0 collides with a tabulated zero")
    return complex(np.sum(d1 ** (-mu)) + np.sum(d2 ** (-mu)))


def empirical_N(zeros: ZeroTable, T: float) -> int:
    """Number of tabulated ordinates strictly below T."""
    if T > zeros.max_ordinate:
        raise ValueError("T exceeds the table range")
    if T <= 0:
        return 0
    return int(np.searchsorted(zeros.ordinates, T, side="left"))


def empirical_S(zeros: ZeroTable, T: float) -> float:
    """S(T) = N(T) - Ncheck(T) - delta(T)/pi from the tabulated zeros."""
    if T > zeros.max_ordinate:
        raise ValueError("T exceeds the table range")
    idx = np.searchsorted(zeros.ordinates, T)
    if idx < zeros.count and zeros.ordinates[idx] == T:
        raise ValueError("S(T) is ambiguous exactly at an ordinate")
    return float(
        empirical_N(zeros, T) - counting.N_check(T) - counting.delta0(T) / np.pi
    )


def empirical_S1(zeros: ZeroTable, T: float) -> float:
    """S1(T) = integral_0^T S(t) dt, via exact staircase integration of N and
    the closed antiderivatives of Ncheck and delta."""
    if T > zeros.max_ordinate:
        raise ValueError("T exceeds the table range")
    g = zeros.ordinates[zeros.ordinates < T]
    n_integral = float(np.sum(T - g))
    return n_integral - counting.N_check_1(T) - counting.delta1(T) / np.pi
