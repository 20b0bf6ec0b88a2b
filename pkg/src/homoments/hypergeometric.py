"""Generalised hypergeometric series pFq with exactly formed terms.

Every term of sum_k prod (a_i)_k / prod (b_j)_k * z^k / k! is built as an
exact Fraction by the ratio recurrence; only the running sum is a float.
A float argument is converted to the Fraction it represents, so no rounding
enters before a term is complete.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .exact_core import i_mn

DEFAULT_MAX_TERMS = 10_000


class SeriesDivergenceError(RuntimeError):
    """Raised when a series does not meet its stopping rule in the allowed terms."""

    def __init__(self, message: str, partial_sum: float, last_term: float):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.last_term = last_term


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial x (x + 1) ... (x + k - 1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    x = Fraction(x)
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def _exact(z) -> Fraction:
    if isinstance(z, (int, Rational)):
        return Fraction(z)
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"argument must be finite, got {z}")
    return Fraction(z)


@dataclass(frozen=True, init=False)
class PFQParams:
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    z: Fraction

    def __init__(self, upper: Sequence, lower: Sequence, z):
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in lower))
        object.__setattr__(self, "z", _exact(z))
        bad = [b for b in self.lower if _is_nonpositive_integer(b)]
        if bad:
            raise ValueError(f"lower parameter {bad[0]} is a non-positive integer")
        if len(self.upper) > len(self.lower) + 1 and not self.terminates and self.z != 0:
            raise ValueError("series with p > q + 1 diverges for z != 0 unless it terminates")
        if len(self.upper) == len(self.lower) + 1 and not self.terminates and abs(self.z) >= 1:
            raise ValueError(f"|z| = {float(abs(self.z))} is outside the unit disc")

    @property
    def terminates(self) -> bool:
        return any(_is_nonpositive_integer(a) for a in self.upper)


def pfq_terms(params: PFQParams):
    """Yield the exact series terms t_0 = 1, t_1, ... (stops after a zero term)."""
    term = Fraction(1)
    k = 0
    while True:
        yield term
        if term == 0:
            return
        num = Fraction(1)
        for a in params.upper:
            num *= a + k
        den = Fraction(1)
        for b in params.lower:
            den *= b + k
        term = term * num / den * params.z / (k + 1)
        k += 1


def pfq(params: PFQParams, rel_tol: float = 1e-15, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Evaluate the series described by ``params``.

    Summation stops on a zero term (terminating series) or once two
    consecutive terms are below ``rel_tol`` times the partial sum. The
    returned value is the correctly rounded sum of the float terms.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    running = 0.0
    small = 0
    terms: list[float] = []
    for k, term in enumerate(pfq_terms(params)):
        if term == 0:
            break
        if k >= max_terms:
            raise SeriesDivergenceError(
                f"pFq not converged after {max_terms} terms", math.fsum(terms), abs(terms[-1])
            )
        t = float(term)
        terms.append(t)
        running += t
        if abs(t) < rel_tol * abs(running):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    return math.fsum(terms)


def hyper(upper: Sequence, lower: Sequence, z, **kwargs) -> float:
    """Shorthand for ``pfq(PFQParams(upper, lower, z), **kwargs)``."""
    return pfq(PFQParams(upper, lower, z), **kwargs)


def check_2f1_identity(m: int, n: int, rel_tol: float = 1e-10) -> tuple[float, float, bool]:
    """Compare 2F1(2m, n-1; m + n/2; 1/2) against float(I(m, n))."""
    if m < 0 or n < 2:
        raise ValueError(f"need m >= 0 and n >= 2, got m={m}, n={n}")
    lhs = hyper([2 * m, n - 1], [Fraction(2 * m + n, 2)], Fraction(1, 2), rel_tol=1e-16)
    rhs = float(i_mn(m, n))
    return lhs, rhs, abs(lhs - rhs) <= rel_tol * abs(rhs)
