import math
import warnings
from fractions import Fraction

import mpmath
import pytest

from homoments.combinatorics import compositions, multinomial
from homoments.exact_core import i_mn
from homoments.vortex import (
    DHMomentCoeff,
    PrecisionLossWarning,
    RadiusConditionError,
    VortexParams,
    dh_moment,
    dh_moment_coeff,
    series_terms,
    z_closed,
    z_series,
)


def _uniform_sum_oracle(N, m):
    # (1/N!) E[(U_1 + ... + U_N)^(2m)], U_i uniform on [-1/2, 1/2]
    def moment(k):
        return Fraction(0) if k % 2 else Fraction(1, 2**k * (k + 1))

    total = sum(
        (multinomial(k) * math.prod(moment(x) for x in k) for k in compositions(2 * m, N)),
        Fraction(0),
    )
    return total / math.factorial(N)


def test_finite_difference_identity():
    for N in range(1, 13):
        s = sum((-1) ** (N - j) * math.comb(N, j) * (2 * j - N) ** N for j in range(N + 1))
        assert s == 2**N * math.factorial(N)


def test_volume_coefficient():
    assert dh_moment_coeff(1, 0) == DHMomentCoeff(Fraction(1), 1)
    for N in range(1, 13):
        assert dh_moment_coeff(N, 0).coeff == Fraction(1, math.factorial(N))


def test_second_moment_n1():
    assert dh_moment_coeff(1, 1) == DHMomentCoeff(Fraction(1, 12), 3)


@pytest.mark.parametrize("N", range(1, 7))
@pytest.mark.parametrize("m", range(0, 5))
def test_coefficient_against_uniform_sum_oracle(N, m):
    assert dh_moment_coeff(N, m).coeff == _uniform_sum_oracle(N, m)


def test_coefficients_positive():
    assert all(dh_moment_coeff(N, m).coeff > 0 for N in range(1, 9) for m in range(9))


def test_dh_moment_values():
    assert dh_moment(VortexParams(1, 2.0), 0) == pytest.approx(4 * math.pi)
    assert dh_moment(VortexParams(2, 3.0), 0) == pytest.approx(8 * math.pi**2)
    assert dh_moment(VortexParams(1, 2.0), 1) == pytest.approx((4 * math.pi) ** 3 / 12)


def test_dh_moment_homogeneity():
    p1, p2 = VortexParams(3, 4.0), VortexParams(3, 5.0)  # R^2 - N doubles
    for m in range(5):
        c = dh_moment_coeff(3, m)
        assert c.power == 3 + 2 * m
        assert dh_moment(p2, m) / dh_moment(p1, m) == pytest.approx(2.0**c.power, rel=1e-13)


def test_dh_moment_overflow():
    with pytest.raises(OverflowError):
        dh_moment(VortexParams(2, 1e6), 200)


def test_params_validation():
    with pytest.raises(RadiusConditionError):
        VortexParams(1, 1.0)
    with pytest.raises(ValueError):
        VortexParams(1, 2.0, T=0)
    p = VortexParams.from_coupling(2, 4.0, 5.0, T=2.0)
    assert p.coupling == pytest.approx(5.0)


def test_zero_coupling():
    for N in range(1, 6):
        p = VortexParams(N, N + 1.5, 0.0, T=1.7, hbar=0.8)
        expected = (p.T / (2 * p.hbar**2)) ** N * p.area**N / math.factorial(N)
        assert z_series(p) == pytest.approx(expected, rel=1e-14)
        assert z_closed(p) == pytest.approx(expected, rel=1e-13)
    p = VortexParams(1, 2.0, 0.0, T=1.0, hbar=1.0)
    assert z_closed(p) == pytest.approx(p.area * p.T / 2)


def test_z_decreases_with_coupling():
    values = [z_series(VortexParams(3, 5.0, mu2)) for mu2 in (0.0, 1e-4, 1e-3, 5e-3)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_series_uses_exact_i_m3():
    p = VortexParams.from_coupling(3, 4.0, 1.0)
    exact = list(zip(range(30), series_terms(p, i_mn)))
    literal = list(zip(range(30), series_terms(p, lambda m, n: Fraction(2 * m + 1))))
    assert exact == literal


@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("dR2", [1, 4])
@pytest.mark.parametrize("coupling", [0.1, 1.0, 5.0])
def test_cross_form_agreement(N, dR2, coupling):
    p = VortexParams.from_coupling(N, N + dR2, coupling)
    zs, zc = z_series(p), z_closed(p)
    assert abs(zs - zc) <= 1e-8 * abs(zc)


def test_against_high_precision_reference():
    mpmath.mp.dps = 40
    p = VortexParams.from_coupling(4, 5.0, 5.0, T=1.3, hbar=0.7)
    N, A, y = p.N, mpmath.mpf(p.area), mpmath.mpf(p.mu2) * mpmath.mpf(p.area) ** 2 / mpmath.mpf(p.T)
    # exponential series evaluated in 40-digit arithmetic
    ref = mpmath.nsum(
        lambda m: (-y) ** m / mpmath.factorial(m) * (2 * m + 1) * mpmath.factorial(2 * m)
        / mpmath.factorial(N + 2 * m)
        * mpmath.fsum((-1) ** (N - j) * (j - mpmath.mpf(N) / 2) ** (N + 2 * m)
                      / (mpmath.factorial(j) * mpmath.factorial(N - j)) for j in range(N + 1)),
        [0, mpmath.inf],
    ) * (mpmath.mpf(p.T) * A / (2 * mpmath.mpf(p.hbar) ** 2)) ** N
    mpmath.mp.dps = 15
    assert z_series(p) == pytest.approx(float(ref), rel=1e-9)
    assert z_closed(p) == pytest.approx(float(ref), rel=1e-9)


def test_no_precision_warning_on_grid():
    with warnings.catch_warnings():
        warnings.simplefilter("error", PrecisionLossWarning)
        z_series(VortexParams.from_coupling(4, 8.0, 5.0))


def test_precision_warning_at_strong_coupling():
    with pytest.warns(PrecisionLossWarning):
        z_series(VortexParams.from_coupling(4, 8.0, 20.0))
