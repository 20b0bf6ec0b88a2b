import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homoments.combinatorics import (
    compositions,
    i_mn_expand,
    i_mn_expand_moments,
    mixed_moment,
    multinomial,
)
from homoments.exact_core import gamma_half, i_mn


def test_compositions_order():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert list(compositions(5, 1)) == [(5,)]


@pytest.mark.parametrize("m,n", [(0, 1), (3, 3), (4, 2), (5, 4), (6, 5)])
def test_compositions_count_and_uniqueness(m, n):
    got = list(compositions(m, n))
    assert len(got) == math.comb(m + n - 1, n - 1)
    assert got == sorted(set(got), reverse=True)
    brute = [t for t in itertools.product(range(m + 1), repeat=n) if sum(t) == m]
    assert sorted(got) == sorted(brute)


def test_compositions_is_lazy():
    gen = compositions(40, 30)
    assert next(gen) == (40,) + (0,) * 29


@pytest.mark.parametrize(
    "r,expected",
    [((6, 0, 0), Fraction(1)), ((4, 2, 0), Fraction(1, 5)), ((2, 2, 2), Fraction(1, 15)), ((1, 1), Fraction(0))],
)
def test_mixed_moment_examples(r, expected):
    assert mixed_moment(r) == expected


def test_mixed_moment_rejects_odd_degree():
    with pytest.raises(ValueError):
        mixed_moment((1, 2))
    with pytest.raises(ValueError):
        mixed_moment(())


def test_hand_computed_i33():
    # (J1^2+J2^2+J3^2)^3 has 3 terms J_i^6, 6 terms 3 J_i^4 J_j^2 and one 6 J1^2 J2^2 J3^2
    by_shape = {}
    for s in compositions(3, 3):
        shape = tuple(sorted(s, reverse=True))
        by_shape.setdefault(shape, []).append(multinomial(s))
    assert by_shape == {(3, 0, 0): [1] * 3, (2, 1, 0): [3] * 6, (1, 1, 1): [6]}
    total = 3 * 1 * mixed_moment((6, 0, 0)) + 6 * 3 * mixed_moment((4, 2, 0)) + 6 * mixed_moment((2, 2, 2))
    assert total == 7


def _sphere_monomial(r):
    # unnormalised integral of x^r over S^(n-1): 2 prod Gamma((r_j+1)/2) / Gamma((|r|+n)/2)
    out = gamma_half(Fraction(sum(r) + len(r), 2))
    num = None
    for k in r:
        g = gamma_half(Fraction(k + 1, 2))
        num = g if num is None else num * g
    return num * 2 / out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_mixed_moment_matches_sphere_oracle(half_parts):
    r = tuple(2 * k for k in half_parts)
    n, m = len(r), sum(half_parts)
    axis = (0,) * (n - 1) + (2 * m,)
    ratio = _sphere_monomial(r) / _sphere_monomial(axis)
    assert ratio.rational() == mixed_moment(r)


@given(st.permutations([4, 2, 0, 2]))
def test_mixed_moment_permutation_symmetry(r):
    assert mixed_moment(r) == mixed_moment((4, 2, 0, 2))


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4), st.integers(0, 3))
def test_round_trip_of_isotropy_hypothesis(v, m):
    lhs = Fraction(0)
    for r in compositions(2 * m, len(v)):
        if all(k % 2 == 0 for k in r):
            lhs += multinomial(r) * math.prod(x ** k for x, k in zip(v, r)) * mixed_moment(r)
    assert lhs == sum(x * x for x in v) ** m


def test_i_mn_expand_examples():
    assert i_mn_expand(3, 3) == 7
    assert i_mn_expand(0, 9) == 1
    assert i_mn_expand(2, 6) == 16


def test_expand_equals_gamma_route():
    for m in range(9):
        for n in range(1, 9):
            assert i_mn_expand(m, n) == i_mn(m, n)


def test_literal_moment_sum_agrees():
    for m in range(6):
        for n in range(1, 6):
            assert i_mn_expand_moments(m, n) == i_mn_expand(m, n)


def test_parallel_sum_equals_serial():
    assert i_mn_expand(7, 6, workers=3) == i_mn_expand(7, 6)
