"""Reproducible Monte Carlo means over counter-based random streams.

Samples are grouped into fixed-size chunks. Chunk ``c`` of a run with seed
``s`` always draws from ``Philox(key=(s, tag), counter=(0, 0, 0, c))``, so a
chunk's samples depend only on (seed, tag, chunk index). Chunks can be
evaluated in any order or on any number of workers; per-chunk statistics are
merged in chunk order, which makes the final mean bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

CHUNK_SIZE = 1 << 16
_MASK64 = (1 << 64) - 1

Sampler = Callable[[np.random.Generator, int], np.ndarray]
Integrand = Callable[[np.ndarray], np.ndarray]


def chunk_rng(seed: int, chunk: int, tag: int = 0) -> np.random.Generator:
    """Independent generator for one chunk of one run."""
    key = [seed & _MASK64, tag & _MASK64]
    return np.random.Generator(np.random.Philox(key=key, counter=[0, 0, 0, chunk]))


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float
    n_samples: int
    seed: int

    def sigmas_from(self, expected: float) -> float:
        """Distance to ``expected`` in standard errors (inf if the error is 0 and they differ)."""
        diff = abs(self.mean - expected)
        if self.std_error == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self.std_error

    def consistent_with(self, expected: float, k: float = 3.0) -> bool:
        return self.sigmas_from(expected) <= k


def joint_sigmas(a: MCEstimate, b: MCEstimate) -> float:
    """|a - b| in units of the combined standard error of two independent estimates."""
    se = math.hypot(a.std_error, b.std_error)
    diff = abs(a.mean - b.mean)
    if se == 0:
        return 0.0 if diff == 0 else math.inf
    return diff / se


def mutually_consistent(estimates: list[MCEstimate], k: float = 3.0) -> bool:
    return all(
        joint_sigmas(a, b) <= k
        for i, a in enumerate(estimates)
        for b in estimates[i + 1:]
    )


def mc_mean(
    integrand: Integrand,
    sampler: Sampler,
    n_samples: int,
    seed: int,
    tag: int = 0,
    chunk_size: int = CHUNK_SIZE,
) -> MCEstimate:
    """Sample mean and standard error of ``integrand(sampler(rng, k))``.

    Chunk statistics (count, mean, M2) are combined with the pairwise update
    of Chan et al. in chunk-index order.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    count, mean, m2 = 0, 0.0, 0.0
    for chunk, start in enumerate(range(0, n_samples, chunk_size)):
        size = min(chunk_size, n_samples - start)
        values = np.asarray(integrand(sampler(chunk_rng(seed, chunk, tag), size)), dtype=float)
        c_mean = float(np.mean(values))
        c_m2 = float(np.sum((values - c_mean) ** 2))
        total = count + size
        delta = c_mean - mean
        mean += delta * size / total
        m2 += c_m2 + delta * delta * count * size / total
        count = total
    variance = m2 / (count - 1)
    return MCEstimate(mean, math.sqrt(variance / count), count, seed)
