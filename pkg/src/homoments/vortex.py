"""Partition function of an interacting gas of N vortices on a 2-sphere.

The moduli space carries a circle action generated by J_3, and localisation
gives the even moments of J_3 exactly:

    int J_3^(2m) = c(N, m) * A^(N + 2m),   A = 4 pi (R^2 - N),

with c(N, m) rational. With the potential mu^2 |J|^2 the partition function is
computed two ways: as the exponential series in mu^2/T (each |J|^(2m) moment
reduced to a J_3 moment through I(m, 3) = 2m + 1), and as a finite sum of
2F2 functions. The two must agree.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .exact_core import i_mn
from .hypergeometric import PFQParams, pfq

PRECISION_GUARD = 1e-6


class RadiusConditionError(ValueError):
    """R^2 > N is required for the vortex moduli space."""


class PrecisionLossWarning(RuntimeWarning):
    pass


class SeriesNotConvergedError(RuntimeError):
    def __init__(self, message: str, partial_sum: float, last_index: int):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.last_index = last_index


@dataclass(frozen=True)
class VortexParams:
    N: int
    R2: float
    mu2: float = 0.0
    T: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"vortex number N must be >= 1, got {self.N}")
        if not self.R2 > self.N:
            raise RadiusConditionError(
                f"radius condition R^2 > N violated (R^2={self.R2}, N={self.N})"
            )
        if self.mu2 < 0:
            raise ValueError("mu2 must be >= 0")
        if self.T <= 0 or self.hbar <= 0:
            raise ValueError("T and hbar must be positive")

    @property
    def area(self) -> float:
        """Effective area A = 4 pi (R^2 - N)."""
        return 4 * math.pi * (self.R2 - self.N)

    @property
    def coupling(self) -> float:
        """Dimensionless coupling mu^2 A^2 / T."""
        return self.mu2 * self.area ** 2 / self.T

    @classmethod
    def from_coupling(cls, N: int, R2: float, coupling: float, T: float = 1.0, hbar: float = 1.0):
        """Parameters with mu^2 chosen so that mu^2 A^2 / T equals ``coupling``."""
        area = 4 * math.pi * (R2 - N)
        if area <= 0:
            raise RadiusConditionError(f"radius condition R^2 > N violated (R^2={R2}, N={N})")
        return cls(N, R2, coupling * T / area ** 2, T, hbar)


@dataclass(frozen=True)
class DHMomentCoeff:
    """Moment value ``coeff * A ** power``."""

    coeff: Fraction
    power: int

    def evaluate(self, area: float) -> float:
        try:
            value = float(self.coeff) * area ** self.power
        except OverflowError as exc:
            raise OverflowError(f"A^{self.power} overflows a float") from exc
        if math.isinf(value):
            raise OverflowError(f"moment {self.coeff} * A^{self.power} overflows a float")
        return value


def dh_moment_coeff(N: int, m: int) -> DHMomentCoeff:
    """Exact c(N, m) with int J_3^(2m) = c(N, m) A^(N+2m).

    c = (2m)! / (N+2m)! * sum_j (-1)^(N-j) (j - N/2)^(N+2m) / (j! (N-j)!).
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    power = N + 2 * m
    total = Fraction(0)
    for j in range(N + 1):
        sign = -1 if (N - j) % 2 else 1
        total += sign * Fraction(2 * j - N, 2) ** power / (math.factorial(j) * math.factorial(N - j))
    return DHMomentCoeff(total * Fraction(math.factorial(2 * m), math.factorial(power)), power)


def dh_moment(params: VortexParams, m: int) -> float:
    """int J_3^(2m) over the moduli space, as a float."""
    return dh_moment_coeff(params.N, m).evaluate(params.area)


def _prefactor(params: VortexParams) -> float:
    return (params.T * params.area / (2 * params.hbar ** 2)) ** params.N


def series_terms(
    params: VortexParams, imn: Callable[[int, int], Fraction] = i_mn
) -> Iterator[float]:
    """Terms of the exponential series for Z / ((T/2 hbar^2)^N A^N).

    Term m is (-y)^m / m! * I(m, 3) * c(N, m) with y = mu^2 A^2 / T, formed
    exactly from the float inputs before rounding.
    """
    y = Fraction(params.mu2) * Fraction(params.area) ** 2 / Fraction(params.T)
    power = Fraction(1)
    m = 0
    while True:
        coeff = dh_moment_coeff(params.N, m).coeff
        yield float(power * imn(m, 3) * coeff / math.factorial(m))
        if y == 0:
            return
        power *= -y
        m += 1


def z_series(params: VortexParams, rel_tol: float = 1e-15, max_m: int = 2000) -> float:
    """Z from the term-by-term expansion of exp(-mu^2 |J|^2 / T).

    Stops once two consecutive terms fall below ``rel_tol`` times the partial
    sum. Warns with :class:`PrecisionLossWarning` when the result is much
    smaller than the largest partial sum (heavy cancellation).
    """
    terms: list[float] = []
    running = 0.0
    peak = 0.0
    small = 0
    for m, t in enumerate(series_terms(params)):
        if m > max_m:
            raise SeriesNotConvergedError(
                f"Z series not converged within {max_m} terms", math.fsum(terms) * _prefactor(params), m - 1
            )
        terms.append(t)
        running += t
        peak = max(peak, abs(running))
        if abs(t) < rel_tol * abs(running):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    total = math.fsum(terms)
    if abs(total) < PRECISION_GUARD * peak:
        warnings.warn(
            f"Z series lost precision: |Z| / max partial sum = {abs(total) / peak:.3g}",
            PrecisionLossWarning,
            stacklevel=2,
        )
    return total * _prefactor(params)


def series_length(params: VortexParams, rel_tol: float = 1e-15) -> int:
    """Number of terms z_series sums for these parameters."""
    running, small = 0.0, 0
    for m, t in enumerate(series_terms(params)):
        running += t
        small = small + 1 if abs(t) < rel_tol * abs(running) else 0
        if small == 2:
            return m + 1
    return m + 1


def z_closed(params: VortexParams, rel_tol: float = 1e-15) -> float:
    """Z as a finite sum over j of 2F2(1, 3/2; (N+1)/2, (N+2)/2; -y (N/2 - j)^2).

    The central term j = N/2 of even N carries a factor 0^N and is skipped.
    """
    N = params.N
    y = Fraction(params.mu2) * Fraction(params.area) ** 2 / Fraction(params.T)
    lower = [Fraction(N + 1, 2), Fraction(N + 2, 2)]
    parts = []
    for j in range(N + 1):
        offset = Fraction(N - 2 * j, 2)
        if offset == 0:
            continue
        weight = Fraction((-1) ** j, math.factorial(j) * math.factorial(N - j)) * offset ** N
        f = pfq(PFQParams([1, Fraction(3, 2)], lower, -y * offset ** 2), rel_tol=rel_tol)
        parts.append(float(weight) * f)
    return math.fsum(parts) * _prefactor(params) / math.factorial(N)
