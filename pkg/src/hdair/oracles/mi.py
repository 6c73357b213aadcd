"""Monte Carlo estimate of I(X;Y) for a constellation over AWGN."""
from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from ..channel import mc_chunks, noise_std
from ..errors import ConfigurationError


def _chunk_terms(points, sigma, seed, chunk, size):
    rng = np.random.default_rng(np.random.SeedSequence([seed, chunk]))
    M = points.size
    x = points[rng.integers(0, M, size=size)]
    nz = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) * sigma
    y = x + nz
    inv = 1.0 / (2.0 * sigma**2)
    lse = logsumexp(-np.abs(y[:, None] - points[None, :]) ** 2 * inv, axis=1)
    return (math.log(M) - np.abs(nz) ** 2 * inv - lse) / math.log(2.0)


def mc_mutual_information(c, snr_db, samples=10**6, seed=0):
    """Sample mean of ``log2 p(y|x) / mean_x' p(y|x')``; returns ``(rate, stderr)``."""
    if samples < 10**4:
        raise ConfigurationError("need at least 1e4 samples")
    sigma = noise_std(snr_db)
    m = math.log2(c.order)
    if sigma == 0.0:
        return m, 0.0
    points = np.asarray(c.points)
    s = s2 = 0.0
    for chunk, size in mc_chunks(int(samples)):
        v = _chunk_terms(points, sigma, int(seed), chunk, size)
        s += float(v.sum())
        s2 += float((v * v).sum())
    mean = s / samples
    var = max(s2 / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / (samples - 1))
