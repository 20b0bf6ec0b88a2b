"""Unit simple 2-vectors in Lambda^2 R^4, the SO(4) adjoint orbit {Pf = 0, |v| = 1}.

Bivectors are 6-vectors in the fixed basis e12, e13, e14, e23, e24, e34.
J: orbit -> Lambda^2 R^4 is the inclusion, so |J| = 1 on the orbit and the
m = 1 isotropy hypothesis holds exactly when the mean of J12 J34 vanishes.
"""

from __future__ import annotations

import numpy as np

from .montecarlo import MCEstimate, chunk_rng, mc_mean
from .sphere import DIRECTION_TAG, sample_sphere, unit_vector

BASIS = ("12", "13", "14", "23", "24", "34")
ORBIT_TAG = 2
COLLINEAR_TOL = 1e-8

_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def component(label: str) -> int:
    """Index of basis element ``e_ab`` given ``"ab"``."""
    return BASIS.index(label)


def pfaffian(v) -> np.ndarray | float:
    """J12 J34 - J13 J24 + J14 J23, along the last axis.

    Positive on e12 + e34; zero exactly on simple bivectors.
    """
    v = np.asarray(v, dtype=float)
    out = v[..., 0] * v[..., 5] - v[..., 1] * v[..., 4] + v[..., 2] * v[..., 3]
    return float(out) if out.ndim == 0 else out


def wedge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Components a_i b_j - a_j b_i of a ^ b for rows of two (k, 4) arrays."""
    return np.stack([a[:, i] * b[:, j] - a[:, j] * b[:, i] for i, j in _PAIRS], axis=-1)


def _orthonormal_pairs(rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    a = rng.standard_normal((size, 4))
    b = rng.standard_normal((size, 4))
    while True:
        na = np.linalg.norm(a, axis=1)
        e1 = a / na[:, None]
        r = b - np.einsum("ij,ij->i", b, e1)[:, None] * e1
        # second pass keeps e1 . e2 at rounding level
        r -= np.einsum("ij,ij->i", r, e1)[:, None] * e1
        nr = np.linalg.norm(r, axis=1)
        bad = (na == 0) | (nr <= COLLINEAR_TOL * np.linalg.norm(b, axis=1))
        if not bad.any():
            return e1, r / nr[:, None]
        idx = np.flatnonzero(bad)
        a[idx] = rng.standard_normal((idx.size, 4))
        b[idx] = rng.standard_normal((idx.size, 4))


def sample_orbit(rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` SO(4)-invariant random points of the orbit, shape (size, 6).

    Two Gaussian 4-vectors are Gram-Schmidt orthonormalised (nearly collinear
    pairs are redrawn) and wedged together.
    """
    e1, e2 = _orthonormal_pairs(rng, size)
    return wedge(e1, e2)


def sample_pf_zero_direction(rng: np.random.Generator) -> np.ndarray:
    """A unit direction v with Pf(v) = 0."""
    return sample_orbit(rng, 1)[0]


def random_pf_zero_direction(seed: int, index: int = 0) -> np.ndarray:
    return sample_pf_zero_direction(chunk_rng(seed, index, DIRECTION_TAG))


def random_direction(seed: int, index: int = 0) -> np.ndarray:
    """A uniform unit 6-vector; Pf is generically non-zero."""
    return sample_sphere(6, chunk_rng(seed, index, DIRECTION_TAG), 1)[0]


def orbit_invariant_errors(n_samples: int, seed: int, chunk_size: int = 1 << 16) -> tuple[float, float]:
    """Largest |‖J‖^2 - 1| and largest |Pf(J)| over ``n_samples`` orbit samples."""
    norm_err = pf_err = 0.0
    for chunk, start in enumerate(range(0, n_samples, chunk_size)):
        J = sample_orbit(chunk_rng(seed, chunk, ORBIT_TAG), min(chunk_size, n_samples - start))
        norm_err = max(norm_err, float(np.max(np.abs(np.einsum("ij,ij->i", J, J) - 1.0))))
        pf_err = max(pf_err, float(np.max(np.abs(pfaffian(J)))))
    return norm_err, pf_err


def mc_component_product(first: str, second: str, n_samples: int, seed: int) -> MCEstimate:
    """Monte Carlo mean of J_first * J_second over the orbit."""
    i, j = component(first), component(second)
    return mc_mean(lambda J: J[:, i] * J[:, j], sample_orbit, n_samples, seed, tag=ORBIT_TAG)


def mc_orthogonality(n_samples: int, seed: int) -> MCEstimate:
    """Monte Carlo mean of J12 J34; zero in expectation."""
    return mc_component_product("12", "34", n_samples, seed)


def mc_orbit_hypothesis(m: int, v, n_samples: int, seed: int) -> MCEstimate:
    """Monte Carlo mean of <v, J>^(2m) over the orbit.

    For m = 1 this is 1/6 for every unit v.
    """
    v = unit_vector(v)
    if v.size != 6:
        raise ValueError(f"direction must have 6 components, got {v.size}")
    return mc_mean(lambda J: (J @ v) ** (2 * m), sample_orbit, n_samples, seed, tag=ORBIT_TAG)
