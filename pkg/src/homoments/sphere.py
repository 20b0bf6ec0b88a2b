"""Moments on the round sphere S^(n-1): exact values, quadrature and Monte Carlo.

Here J_1..J_n are the Cartesian coordinates restricted to the unit sphere in
R^n. Then |J|^2 = 1, the sphere volume is the integral of |J|^(2m), and by
rotational invariance the integral of (v . J)^(2m) equals that of J_n^(2m).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .exact_core import PiScaled, gamma_half
from .montecarlo import MCEstimate, chunk_rng, mc_mean

SPHERE_TAG = 1
DIRECTION_TAG = 3
UNIT_TOL = 1e-12
QUAD_ORDER = 20
QUAD_MAX_NODES = 1 << 20


class QuadratureError(RuntimeError):
    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


def sphere_volume(n: int) -> PiScaled:
    """Volume of S^(n-1), i.e. 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1:
        raise ValueError(f"sphere dimension n must be >= 1, got {n}")
    return PiScaled(Fraction(2), n) / gamma_half(Fraction(n, 2))


def axis_moment(n: int, m: int) -> PiScaled:
    """Integral of J_n^(2m) over S^(n-1): 2 pi^((n-1)/2) Gamma(m + 1/2) / Gamma(m + n/2)."""
    if n < 2:
        raise ValueError(f"axis_moment needs n >= 2, got {n}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return (
        PiScaled(Fraction(2), n - 1)
        * gamma_half(Fraction(2 * m + 1, 2))
        / gamma_half(Fraction(2 * m + n, 2))
    )


def _composite_gauss_legendre(f, a: float, b: float, panels: int, order: int) -> float:
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    return float(np.sum(half[:, None] * w[None, :] * f(nodes)))


def quad_axis_moment(
    n: int, m: int, tol: float = 1e-12, order: int = QUAD_ORDER, max_nodes: int = QUAD_MAX_NODES
) -> float:
    """Integral of J_n^(2m) over S^(n-1) by one-dimensional quadrature.

    Slicing the sphere at height x gives the volume element
    (1 - x^2)^((n-3)/2) dx dvol(S^(n-2)). With x = sin(t) the x-integrand
    becomes sin(t)^(2m) cos(t)^(n-2) on [-pi/2, pi/2], which is smooth for
    every n >= 2. Composite Gauss-Legendre panels are doubled until two
    successive estimates differ by less than ``tol``.
    """
    if n < 2:
        raise ValueError(f"quad_axis_moment needs n >= 2, got {n}")
    if tol <= 0:
        raise ValueError("tol must be positive")

    def integrand(t):
        return np.sin(t) ** (2 * m) * np.cos(t) ** (n - 2)

    shell = float(sphere_volume(n - 1))
    a, b = -math.pi / 2, math.pi / 2
    panels = 2
    prev = shell * _composite_gauss_legendre(integrand, a, b, 1, order)
    while panels * order <= max_nodes:
        cur = shell * _composite_gauss_legendre(integrand, a, b, panels, order)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
        panels *= 2
    raise QuadratureError(
        f"no convergence to {tol} within {max_nodes} nodes (n={n}, m={m})", prev
    )


def unit_vector(components, tol: float = UNIT_TOL) -> np.ndarray:
    v = np.asarray(components, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("a unit vector must be a non-empty 1-d sequence")
    if abs(float(v @ v) - 1.0) > tol:
        raise ValueError(f"vector has squared norm {float(v @ v)!r}, expected 1")
    return v


def sample_sphere(n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` points uniform on S^(n-1), as rows of a (size, n) array.

    Normalised Gaussian vectors; all-zero draws are redrawn.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x = rng.standard_normal((size, n))
    norms = np.sqrt(np.einsum("ij,ij->i", x, x))
    bad = np.flatnonzero(norms == 0)
    while bad.size:
        x[bad] = rng.standard_normal((bad.size, n))
        norms[bad] = np.sqrt(np.einsum("ij,ij->i", x[bad], x[bad]))
        bad = bad[norms[bad] == 0]
    return x / norms[:, None]


def random_unit_vector(n: int, seed: int, index: int = 0) -> np.ndarray:
    """Reproducible uniform direction in R^n, the ``index``-th for this seed."""
    return sample_sphere(n, chunk_rng(seed, index, DIRECTION_TAG), 1)[0]


def mc_projected_moment(n: int, m: int, v, n_samples: int, seed: int) -> MCEstimate:
    """Monte Carlo mean of (v . x)^(2m) for x uniform on S^(n-1).

    In normalised measure the expectation is 1 / I(m, n) whatever the unit v.
    """
    v = unit_vector(v)
    if v.size != n:
        raise ValueError(f"direction has {v.size} components, expected {n}")
    return mc_mean(
        lambda x: (x @ v) ** (2 * m),
        lambda rng, k: sample_sphere(n, rng, k),
        n_samples,
        seed,
        tag=SPHERE_TAG,
    )
