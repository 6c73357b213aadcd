"""Reed-Solomon codes over GF(2^m) and two independent BDD decoders."""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from ..errors import ConfigurationError
from .gf import field


class RSCode:
    """(n, n-2t) RS code with generator ``prod_{j=1}^{2t} (x - alpha^j)``.

    Codeword symbol ``c[p]`` is the coefficient of ``x^p``; ``n < q-1`` gives
    the shortened code.
    """

    def __init__(self, q, n, t):
        if not (1 <= t and 2 * t < n <= q - 1):
            raise ConfigurationError(f"no RS code with q={q}, n={n}, t={t}")
        self.gf = field(q)
        self.q, self.n, self.t = q, n, t
        self.k = n - 2 * t
        g = [1]
        for j in range(1, 2 * t + 1):
            g = self.gf.poly_mul(g, [self.gf.pow_alpha(j), 1])
        self.generator = g
        pos = np.arange(n)
        self.check_pows = np.array([j * pos for j in range(1, 2 * t + 1)])

    def encode(self, msg):
        """Non-systematic encoding ``m(x) g(x)``."""
        c = self.gf.poly_mul(list(msg), self.generator)
        return np.array(c + [0] * (self.n - len(c)), dtype=np.int64)

    def syndromes(self, words):
        """``S_j = r(alpha^j)``, j = 1..2t, for each row of ``words``."""
        words = np.atleast_2d(words)
        out = np.empty((words.shape[0], 2 * self.t), dtype=np.int64)
        coef = self.gf.exp[self.check_pows % (self.q - 1)]
        for j in range(2 * self.t):
            terms = self.gf.mul_table[words, coef[j][None, :]]
            out[:, j] = np.bitwise_xor.reduce(terms, axis=1)
        return out

    def syndrome_index(self, words):
        s = self.syndromes(words)
        return s @ (self.q ** np.arange(2 * self.t))

    def codewords(self, limit=1 << 22):
        """All q^k codewords (refuses above ``limit``)."""
        if self.q**self.k > limit:
            raise ConfigurationError("codebook too large to enumerate")
        msgs = itertools.product(range(self.q), repeat=self.k)
        return np.array([self.encode(m) for m in msgs], dtype=np.int64)

    def weight_distribution(self):
        cw = self.codewords()
        return np.bincount((cw != 0).sum(axis=1), minlength=self.n + 1)

    # -- decoders -------------------------------------------------------

    @cached_property
    def _syndrome_table(self):
        """Syndrome -> index into the list of error patterns of weight <= t."""
        leaders = [np.zeros(self.n, dtype=np.int64)]
        for w in range(1, self.t + 1):
            for supp in itertools.combinations(range(self.n), w):
                for vals in itertools.product(range(1, self.q), repeat=w):
                    e = np.zeros(self.n, dtype=np.int64)
                    e[list(supp)] = vals
                    leaders.append(e)
        leaders = np.array(leaders)
        table = np.full(self.q ** (2 * self.t), -1, dtype=np.int64)
        idx = self.syndrome_index(leaders)
        if np.any(table[idx] != -1) or np.unique(idx).size != idx.size:
            raise AssertionError("two correctable patterns share a syndrome")
        table[idx] = np.arange(leaders.shape[0])
        return table, leaders

    def bdd_syndrome(self, words):
        """Bounded-distance decode via the syndrome table.

        Returns ``(decoded, ok)``; rows with no codeword within distance t
        are returned unchanged with ``ok = False``.
        """
        words = np.atleast_2d(words)
        table, leaders = self._syndrome_table
        hit = table[self.syndrome_index(words)]
        ok = hit >= 0
        decoded = words.copy()
        decoded[ok] ^= leaders[hit[ok]]
        return decoded, ok

    @cached_property
    def _ball_table(self):
        if self.q**self.n > 1 << 26:
            raise ConfigurationError("received-word space too large for the ball table")
        cw = self.codewords()
        radix = self.q ** np.arange(self.n)
        table = np.full(self.q**self.n, -1, dtype=np.int64)
        patterns = [np.zeros(self.n, dtype=np.int64)]
        for w in range(1, self.t + 1):
            for supp in itertools.combinations(range(self.n), w):
                for vals in itertools.product(range(1, self.q), repeat=w):
                    e = np.zeros(self.n, dtype=np.int64)
                    e[list(supp)] = vals
                    patterns.append(e)
        cw_idx = np.arange(cw.shape[0])
        for e in patterns:
            keys = (cw ^ e) @ radix
            if np.any(table[keys] != -1):
                raise AssertionError("decoding spheres overlap")
            table[keys] = cw_idx
        return table, cw, radix

    def bdd_exhaustive(self, words):
        """Bounded-distance decode by lookup in the union of radius-t balls
        around every enumerated codeword."""
        words = np.atleast_2d(words)
        table, cw, radix = self._ball_table
        hit = table[words @ radix]
        ok = hit >= 0
        decoded = words.copy()
        decoded[ok] = cw[hit[ok]]
        return decoded, ok

    def nearest_within_t(self, word):
        """Literal search over the whole codebook (slow; for spot checks)."""
        cw = self._ball_table[1]
        d = (cw != np.asarray(word)[None, :]).sum(axis=1)
        k = int(np.argmin(d))
        return (cw[k].copy(), True) if d[k] <= self.t else (np.asarray(word).copy(), False)
