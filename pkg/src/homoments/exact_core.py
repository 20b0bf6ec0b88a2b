"""Exact Gamma/Beta values at half-integer arguments and the moment constant I(m, n).

Rationals are :class:`fractions.Fraction`. Values that carry powers of
sqrt(pi) are kept symbolic in :class:`PiScaled`, so the cancellation of every
sqrt(pi) in I(m, n) is checked rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "HalfInteger",
    "PiScaled",
    "gamma_half",
    "beta_half",
    "i_mn",
    "i_mn_closed",
]


@dataclass(frozen=True, order=True)
class HalfInteger:
    """The number ``twice_value / 2``."""

    twice_value: int

    @classmethod
    def of(cls, value: "HalfInteger | Rational | int") -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(twice))

    def __add__(self, other: "HalfInteger | int") -> "HalfInteger":
        return HalfInteger(self.twice_value + HalfInteger.of(other).twice_value)

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __str__(self) -> str:
        return str(self.as_fraction())


@dataclass(frozen=True)
class PiScaled:
    """Exact value ``coeff * pi ** (half_pi_power / 2)``."""

    coeff: Fraction
    half_pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0:
            object.__setattr__(self, "half_pi_power", 0)

    def __mul__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(self.coeff * other.coeff, self.half_pi_power + other.half_pi_power)
        if isinstance(other, (int, Rational)):
            return PiScaled(self.coeff * other, self.half_pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiScaled):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero PiScaled")
            return PiScaled(self.coeff / other.coeff, self.half_pi_power - other.half_pi_power)
        if isinstance(other, (int, Rational)):
            return PiScaled(self.coeff / other, self.half_pi_power)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, PiScaled):
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.half_pi_power != other.half_pi_power:
            raise ValueError(
                f"cannot add pi^({self.half_pi_power}/2) and pi^({other.half_pi_power}/2) terms"
            )
        return PiScaled(self.coeff + other.coeff, self.half_pi_power)

    def __neg__(self):
        return PiScaled(-self.coeff, self.half_pi_power)

    def __sub__(self, other):
        if not isinstance(other, PiScaled):
            return NotImplemented
        return self + (-other)

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** (self.half_pi_power / 2)

    def is_rational(self) -> bool:
        return self.half_pi_power == 0

    def rational(self) -> Fraction:
        """The value as a Fraction; raises if a sqrt(pi) factor survives."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeff

    def __str__(self) -> str:
        if self.half_pi_power == 0:
            return str(self.coeff)
        if self.half_pi_power % 2 == 0:
            return f"{self.coeff}*pi^{self.half_pi_power // 2}"
        return f"{self.coeff}*pi^({self.half_pi_power}/2)"


def gamma_half(a) -> PiScaled:
    """Gamma(a) for a positive half-integer ``a``.

    Starts from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi) and climbs with
    Gamma(z + 1) = z Gamma(z).
    """
    p = HalfInteger.of(a).twice_value
    if p < 1:
        raise ValueError(f"Gamma argument must be a positive half-integer, got {Fraction(p, 2)}")
    if p % 2 == 0:
        return PiScaled(Fraction(math.factorial(p // 2 - 1)), 0)
    coeff = Fraction(1)
    # Gamma(k + 1/2) = (1/2)(3/2)...(k - 1/2) sqrt(pi)
    for q in range(1, p - 1, 2):
        coeff *= Fraction(q, 2)
    return PiScaled(coeff, 1)


def beta_half(a, b) -> PiScaled:
    """Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    a, b = HalfInteger.of(a), HalfInteger.of(b)
    return gamma_half(a) * gamma_half(b) / gamma_half(a + b)


def _check_mn(m: int, n: int) -> None:
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def i_mn(m: int, n: int) -> Fraction:
    """The rational constant Gamma(1/2) Gamma(m + n/2) / (Gamma(m + 1/2) Gamma(n/2))."""
    _check_mn(m, n)
    num = gamma_half(Fraction(1, 2)) * gamma_half(Fraction(2 * m + n, 2))
    den = gamma_half(Fraction(2 * m + 1, 2)) * gamma_half(Fraction(n, 2))
    value = num / den
    assert value.half_pi_power == 0, f"sqrt(pi) did not cancel in I({m},{n})"
    return value.coeff


def _odd_tail_ratio(n: int) -> Fraction:
    """((n-3)/2)! / (n-2)! for odd n.

    At n = 1 both factorials sit on poles of Gamma; the ratio is taken as its
    limit Gamma(e/2)/Gamma(e) -> 2.
    """
    if n == 1:
        return Fraction(2)
    return Fraction(math.factorial((n - 3) // 2), math.factorial(n - 2))


def i_mn_closed(m: int, n: int) -> Fraction:
    """I(m, n) from the explicit factorial formulas (separate even/odd n branches).

    The factorial formulas need m >= 1; m = 0 is delegated to :func:`i_mn`.
    """
    _check_mn(m, n)
    if m == 0:
        return i_mn(m, n)
    f = math.factorial
    if n % 2 == 0:
        h = n // 2
        return Fraction(2 ** (2 * m - 1) * f(m + h - 1) * f(m - 1), f(2 * m - 1) * f(h - 1))
    head = Fraction(f(2 * m + n - 2) * f(m - 1), 2 * f(2 * m - 1) * f(m + (n - 3) // 2))
    return head * _odd_tail_ratio(n)
