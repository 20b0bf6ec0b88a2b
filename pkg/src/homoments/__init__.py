"""Exact homogeneous moments I(m, n), mixed moments, and their independent checks."""

from .combinatorics import compositions, i_mn_expand, mixed_moment
from .exact_core import HalfInteger, PiScaled, beta_half, gamma_half, i_mn, i_mn_closed
from .montecarlo import MCEstimate

__all__ = [
    "HalfInteger",
    "MCEstimate",
    "PiScaled",
    "beta_half",
    "compositions",
    "gamma_half",
    "i_mn",
    "i_mn_closed",
    "i_mn_expand",
    "mixed_moment",
]
