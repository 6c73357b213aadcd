"""Component-code parameters and Reed-Solomon weight enumerators."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from ..errors import ConfigurationError


def binom(n, k):
    """Binomial coefficient that is zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def mds_weight(q, n, d, w):
    """Exact number of weight-``w`` codewords of an (n, n-d+1) MDS code over GF(q)."""
    if w == 0:
        return 1
    if w < d or w > n:
        return 0
    total = sum((-1) ** j * comb(w - 1, j) * q ** (w - d - j) for j in range(w - d + 1))
    return comb(n, w) * (q - 1) * total


def full_length_weight(q, t, alpha):
    """Closed-form weight enumerator of the full-length (n = q-1) RS code.

    Uses the field-size binomial C(q-1, alpha); reduces to ``mds_weight`` when
    the code is not shortened.
    """
    n = q - 1
    if alpha < 0 or alpha > n:
        return 0
    s = Fraction((q - 1) ** alpha)
    s += sum((-1) ** (alpha + j) * comb(alpha, j) * (q ** (2 * t) - q**j)
             for j in range(min(alpha, 2 * t) + 1))
    val = comb(n, alpha) * s / q ** (2 * t)
    if val.denominator != 1:
        raise ArithmeticError("closed form returned a non-integer count")
    return int(val)


@dataclass(frozen=True)
class ComponentCodeSpec:
    """(n, n-2t) Reed-Solomon component code over GF(q), possibly shortened."""

    q: int
    n: int
    t: int

    def __post_init__(self):
        if self.q < 3:
            raise ConfigurationError("field size q must be >= 3")
        if self.t < 1 or 2 * self.t >= self.n or self.n > self.q - 1:
            raise ConfigurationError(
                f"need 1 <= t, 2t < n <= q-1; got q={self.q}, n={self.n}, t={self.t}"
            )

    @property
    def k(self):
        return self.n - 2 * self.t

    @property
    def d_min(self):
        return 2 * self.t + 1

    def weight(self, alpha):
        """A_alpha, zero outside ``[0, n]`` (internal use)."""
        return mds_weight(self.q, self.n, self.d_min, alpha)

    @property
    def overhead(self):
        """Component overhead (n - k)/k."""
        return (self.n - self.k) / self.k

    @property
    def staircase_rate(self):
        """Rate of the w = 2 coupled (staircase) code, 2k/n - 1."""
        return 2.0 * self.k / self.n - 1.0


def rs_weight_distribution(spec, alpha):
    """Number of codewords of Hamming weight ``alpha``, as a float."""
    if not 0 <= alpha <= spec.n:
        raise IndexError(f"alpha={alpha} outside [0, {spec.n}]")
    return float(spec.weight(alpha))
