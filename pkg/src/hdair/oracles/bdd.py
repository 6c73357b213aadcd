"""Brute-force post-BDD symbol statistics of small RS codes.

The all-zero codeword is sent. A designated position is either in error
(uniform nonzero value) or correct, and ``i`` further positions chosen
uniformly among the other ``n - 1`` carry uniform nonzero errors. The
received word goes through true bounded-distance decoding and we count how
often the designated symbol ends up wrong.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from ..errors import ConfigurationError
from .rs import RSCode

SAMPLE_CHUNK = 1 << 18


@dataclass
class BddStats:
    q: int
    n: int
    t: int
    per_i_error_given_error: list
    per_i_error_given_correct: list
    enumeration: str
    trials: list
    errors: list = field(default_factory=list)
    modes: list = field(default_factory=list)

    def exact(self, i, case="error"):
        """Exact ratio for an exhaustively enumerated ``i``."""
        k = 0 if case == "error" else 1
        if self.modes[i][k] != "exhaustive":
            raise ValueError(f"i={i} was sampled, not enumerated")
        return Fraction(self.errors[i][k], self.trials[i][k])

    def stderr(self, i, case="error"):
        k = 0 if case == "error" else 1
        p = self.errors[i][k] / self.trials[i][k]
        return float(np.sqrt(max(p * (1 - p), 0.0) / self.trials[i][k]))

    def to_dict(self):
        return {
            "q": self.q, "n": self.n, "t": self.t,
            "enumeration": self.enumeration,
            "per_i_error_given_error": self.per_i_error_given_error,
            "per_i_error_given_correct": self.per_i_error_given_correct,
            "trials": self.trials, "errors": self.errors, "modes": self.modes,
        }


def pattern_count(q, n, i, designated_in_error):
    return n * comb(n - 1, i) * (q - 1) ** (i + int(designated_in_error))


def _decoder(code, how):
    if how == "auto":
        how = "exhaustive" if code.k <= 5 else "syndrome"
    return code.bdd_exhaustive if how == "exhaustive" else code.bdd_syndrome


def _count_errors(code, decode, words, designated):
    decoded, _ = decode(words)
    return int(np.count_nonzero(decoded[np.arange(words.shape[0]), designated]))


def _exhaustive(code, decode, i, in_error):
    q, n = code.q, code.n
    nv = i + int(in_error)
    radix = (q - 1) ** np.arange(nv)
    total = errors = 0
    for d in range(n):
        others = [p for p in range(n) if p != d]
        for supp in itertools.combinations(others, i):
            cols = ([d] if in_error else []) + list(supp)
            nvals = (q - 1) ** nv
            for start in range(0, nvals, SAMPLE_CHUNK):
                idx = np.arange(start, min(start + SAMPLE_CHUNK, nvals))
                vals = idx[:, None] // radix[None, :] % (q - 1) + 1
                words = np.zeros((idx.size, n), dtype=np.int64)
                if nv:
                    words[:, cols] = vals
                errors += _count_errors(code, decode, words, np.full(idx.size, d))
                total += idx.size
    return errors, total


def _sampled_chunk(code, decode, i, in_error, seed, chunk, size):
    q, n = code.q, code.n
    rng = np.random.default_rng(np.random.SeedSequence([seed, i, int(in_error), chunk]))
    d = rng.integers(0, n, size=size)
    keys = rng.random((size, n))
    keys[np.arange(size), d] = 2.0  # never pick the designated position
    supp = np.argsort(keys, axis=1)[:, :i]
    words = np.zeros((size, n), dtype=np.int64)
    rows = np.arange(size)[:, None]
    words[rows, supp] = rng.integers(1, q, size=(size, i))
    if in_error:
        words[np.arange(size), d] = rng.integers(1, q, size=size)
    return _count_errors(code, decode, words, d)


@lru_cache(maxsize=8)
def _code(q, n, t):
    return RSCode(q, n, t)


def _task(args):
    q, n, t, i, in_error, budget, seed, how = args
    code = _code(q, n, t)
    decode = _decoder(code, how)
    if pattern_count(q, n, i, in_error) <= budget:
        e, tot = _exhaustive(code, decode, i, in_error)
        return e, tot, "exhaustive"
    e = 0
    for chunk, start in enumerate(range(0, budget, SAMPLE_CHUNK)):
        size = min(SAMPLE_CHUNK, budget - start)
        e += _sampled_chunk(code, decode, i, in_error, seed, chunk, size)
    return e, budget, "sampled"


def enumerate_bdd_stats(q, n, t, i_max=None, budget=10**6, seed=0, decoder="auto", workers=1):
    """Empirical ``P_n(i)`` and ``P_bar_n(i)`` for ``i = 0..i_max``.

    Cases with at most ``budget`` patterns are enumerated exhaustively
    (exact ratios); the rest draw ``budget`` random patterns.
    """
    if q > 16 or n > 15:
        raise ConfigurationError("oracle limited to q <= 16 and n <= 15")
    RSCode(q, n, t)  # validates parameters
    if i_max is None:
        i_max = n - 1
    if not 0 <= i_max <= n - 1:
        raise ConfigurationError(f"i_max must lie in [0, {n - 1}]")
    if budget < 1:
        raise ConfigurationError("budget must be >= 1")
    jobs = [(q, n, t, i, flag, int(budget), int(seed), decoder)
            for i in range(i_max + 1) for flag in (True, False)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            res = list(ex.map(_task, jobs))
    else:
        res = [_task(j) for j in jobs]
    pe, pc, trials, errors, modes = [], [], [], [], []
    for i in range(i_max + 1):
        (e1, n1, m1), (e2, n2, m2) = res[2 * i], res[2 * i + 1]
        pe.append(e1 / n1)
        pc.append(e2 / n2)
        trials.append([n1, n2])
        errors.append([e1, e2])
        modes.append([m1, m2])
    flat = {m for pair in modes for m in pair}
    enumeration = flat.pop() if len(flat) == 1 else "mixed"
    return BddStats(q, n, t, pe, pc, enumeration, trials, errors, modes)
