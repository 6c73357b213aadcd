"""Small binary-extension fields GF(2^m) via log/antilog tables."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import ConfigurationError

# primitive polynomials, bit i = coefficient of x^i
PRIMITIVE_POLY = {
    4: 0b111,         # x^2 + x + 1
    8: 0b1011,        # x^3 + x + 1
    16: 0b10011,      # x^4 + x + 1
    32: 0b100101,     # x^5 + x^2 + 1
}


class GF:
    """GF(q) for q a power of two listed in ``PRIMITIVE_POLY``.

    Elements are ints in ``[0, q)``; addition is XOR. ``exp[k] = alpha^k``
    with the table doubled so sums of two logs index directly.
    """

    def __init__(self, q):
        if q not in PRIMITIVE_POLY:
            raise ConfigurationError(f"GF({q}) not supported; choose from {sorted(PRIMITIVE_POLY)}")
        self.q = q
        poly = PRIMITIVE_POLY[q]
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        v = 1
        for k in range(q - 1):
            exp[k] = v
            log[v] = k
            v <<= 1
            if v & q:
                v ^= poly
        exp[q - 1:] = exp[:q - 1]
        self.exp, self.log = exp, log
        a = np.arange(q)
        tab = exp[(log[:, None] + log[None, :]) % (q - 1)]
        tab[(a[:, None] == 0) | (a[None, :] == 0)] = 0
        self.mul_table = tab

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def pow_alpha(self, k):
        return int(self.exp[k % (self.q - 1)])

    def mul_alpha_pow(self, a, k):
        """Vectorized ``a * alpha^k`` for an int array ``a`` and int array ``k``."""
        a = np.asarray(a)
        idx = (self.log[a] + np.asarray(k)) % (self.q - 1)
        return np.where(a == 0, 0, self.exp[idx])

    def poly_mul(self, p, r):
        out = [0] * (len(p) + len(r) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(r):
                out[i + j] ^= self.mul(a, b)
        return out


@lru_cache(maxsize=None)
def field(q):
    return GF(q)
