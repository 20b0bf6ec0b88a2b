"""Mixed moments from coefficient matching, and I(m, n) by multinomial expansion.

If the integral of (v . J)^(2m) equals |v|^(2m) for every v (normalised so the
constant is 1), comparing coefficients of each v-monomial on both sides fixes
every mixed moment of degree 2m. Summing the multinomial expansion of
|J|^(2m) against those moments recovers I(m, n) without any Gamma function.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterator, Sequence

__all__ = [
    "MultiIndex",
    "compositions",
    "mixed_moment",
    "multinomial",
    "i_mn_expand",
    "i_mn_expand_moments",
]

MultiIndex = tuple[int, ...]


def compositions(m: int, n: int) -> Iterator[MultiIndex]:
    """Yield all n-tuples of non-negative integers summing to m.

    Tuples come in lexicographically decreasing order, (m, 0, ..., 0) first,
    and are generated lazily.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    a = [m] + [0] * (n - 1)
    yield tuple(a)
    last = n - 1
    while a[last] != m:
        # rightmost non-zero part before the last one moves one unit right
        k = last - 1
        while a[k] == 0:
            k -= 1
        tail = a[last]
        a[last] = 0
        a[k] -= 1
        a[k + 1] = tail + 1
        yield tuple(a)


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(parts!)."""
    out, total = 1, 0
    for k in parts:
        total += k
        out *= math.comb(total, k)
    return out


def _validate(r: Sequence[int]) -> MultiIndex:
    r = tuple(int(k) for k in r)
    if not r:
        raise ValueError("multi-index must have at least one part")
    if any(k < 0 for k in r):
        raise ValueError(f"multi-index parts must be non-negative: {r}")
    return r


def mixed_moment(r: Sequence[int]) -> Fraction:
    """Integral of J_1^r_1 ... J_n^r_n implied by the isotropy hypothesis (C = 1).

    The v-monomial prod v_j^r_j appears with coefficient multinomial(r) times
    the moment on the left, and with multinomial(r / 2) on the right when all
    r_j are even (zero otherwise).

    Raises ValueError for odd total degree.
    """
    r = _validate(r)
    degree = sum(r)
    if degree % 2:
        raise ValueError(f"total degree {degree} of {r} is odd; moments are only determined in even degree")
    if any(k % 2 for k in r):
        return Fraction(0)
    return Fraction(multinomial([k // 2 for k in r]), multinomial(r))


def _partial_binomial_sum(m: int, n: int) -> int:
    # sum over compositions s of m into n parts of prod C(2 s_j, s_j)
    central = [math.comb(2 * k, k) for k in range(m + 1)]
    return sum(math.prod(map(central.__getitem__, s)) for s in compositions(m, n))


def _head_slice(args: tuple[int, int, int]) -> int:
    m, n, head = args
    return math.comb(2 * head, head) * _partial_binomial_sum(m - head, n - 1)


def i_mn_expand(m: int, n: int, workers: int | None = None) -> Fraction:
    """I(m, n) as the integral of (J_1^2 + ... + J_n^2)^m, expanded term by term.

    Each composition s of m contributes multinomial(s) * mixed_moment(2 s),
    which simplifies to (m!)^2 / (2m)! * prod C(2 s_j, s_j). With ``workers``
    the sum is split over the first part across processes; the result is
    identical because it is an exact integer sum.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    scale = Fraction(math.factorial(m) ** 2, math.factorial(2 * m))
    if workers is None or workers <= 1 or n == 1:
        return scale * _partial_binomial_sum(m, n)
    jobs = [(m, n, head) for head in range(m, -1, -1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        total = sum(pool.map(_head_slice, jobs))
    return scale * total


def i_mn_expand_moments(m: int, n: int) -> Fraction:
    """Same sum as :func:`i_mn_expand`, written literally with :func:`mixed_moment`."""
    return sum(
        (multinomial(s) * mixed_moment([2 * k for k in s]) for s in compositions(m, n)),
        Fraction(0),
    )
