"""Per-symbol post-BDD error probabilities of an RS component code.

``P_n(i)``: a designated symbol that was in error is still wrong after
bounded-distance decoding, given ``i`` other erroneous symbols.
``P_bar_n(i)``: a designated symbol that was correct becomes wrong
(miscorrection), given ``i`` other erroneous symbols.

Both are finite sums over the possible wrong codewords inside the decoding
radius. For a codeword of weight ``alpha`` at decoding distance
``d`` (``delta_idx``), ``j`` of the ``d`` changes fall in the codeword's
support and ``z`` of those ``j`` overwrite a nonzero received value. The
counts are integers; sums are done in exact rationals.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .weights import binom


def _triple(spec, i):
    """Yield ``(alpha, numerator)`` terms of the shared triple sum for ``i``."""
    n, q, t = spec.n, spec.q, spec.t
    for delta_idx in range(1, t + 1):
        for j in range(delta_idx):
            for z in range(j + 1):
                alpha = i - delta_idx + 2 * j - z + 1
                if alpha < 0 or n - alpha - 1 < delta_idx - j - 1:
                    continue
                num = (binom(alpha, alpha - j) * binom(j, z) * (q - 2) ** z
                       * binom(n - alpha - 1, delta_idx - j - 1) * (q - 1) ** (delta_idx - j - 1))
                if num:
                    yield alpha, num


def _check_i(spec, i):
    if not 0 <= i <= spec.n - 1:
        raise IndexError(f"i={i} outside [0, {spec.n - 1}]")


def p_n_exact(spec, i):
    _check_i(spec, i)
    n, q, t = spec.n, spec.q, spec.t
    if i <= t - 1:
        return Fraction(0)
    denom = binom(n - 1, i) * (q - 1) ** i
    acc = sum((n - a) * spec.weight(a) * num for a, num in _triple(spec, i))
    val = 1 - Fraction(acc, n * denom)
    return min(max(val, Fraction(0)), Fraction(1))


def p_bar_n_exact(spec, i):
    _check_i(spec, i)
    n, q, t = spec.n, spec.q, spec.t
    if i <= t:
        return Fraction(0)
    denom = binom(n - 1, i) * (q - 1) ** i
    acc = sum((a + 1) * spec.weight(a + 1) * num for a, num in _triple(spec, i))
    val = Fraction(acc, n * denom)
    return min(max(val, Fraction(0)), Fraction(1))


def p_n(spec, i):
    return float(p_n_exact(spec, i))


def p_bar_n(spec, i, mode="miscorrection_aware"):
    if mode == "idealized":
        _check_i(spec, i)
        return 0.0
    return float(p_bar_n_exact(spec, i))


@lru_cache(maxsize=64)
def _tables(spec, mode):
    n, t = spec.n, spec.t
    if mode == "idealized":
        P = (np.arange(n) >= t).astype(float)
        Pbar = np.zeros(n)
    elif mode == "miscorrection_aware":
        P = np.array([p_n(spec, i) for i in range(n)])
        Pbar = np.array([p_bar_n(spec, i) for i in range(n)])
    else:
        from ..errors import ConfigurationError

        raise ConfigurationError(f"unknown BDD mode {mode!r}")
    P.setflags(write=False)
    Pbar.setflags(write=False)
    return P, Pbar


def tables(spec, mode="miscorrection_aware"):
    """Read-only arrays ``(P_n(0..n-1), P_bar_n(0..n-1))`` for ``mode``."""
    return _tables(spec, mode)
