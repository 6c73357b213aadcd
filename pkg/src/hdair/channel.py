"""Hard-detection discrete memoryless channels for QAM over AWGN.

SNR is Es/N0 = 1/(2 sigma^2) with unit symbol energy, so each real axis
carries Gaussian noise of variance ``1/(2 SNR)``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .constellation import SUPPORTED_ORDERS, Constellation, build_square_qam
from .errors import ConfigurationError, DomainError

MC_CHUNK = 1 << 20


@dataclass(frozen=True, eq=False)
class DmcModel:
    transition: np.ndarray
    delta: float
    eps_levels: np.ndarray | None
    eps_bar: float | None
    snr_db: float | None = None
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.transition.shape[0]

    def to_dict(self):
        return {
            "order": self.order,
            "snr_db": self.snr_db,
            "delta": self.delta,
            "eps_levels": None if self.eps_levels is None else [float(e) for e in self.eps_levels],
            "eps_bar": self.eps_bar,
            "transition": [[float(v) for v in row] for row in self.transition],
            "meta": dict(self.meta),
        }


def snr_linear(snr_db):
    return math.inf if snr_db == math.inf else 10.0 ** (snr_db / 10.0)


def noise_std(snr_db):
    """Per-axis noise standard deviation."""
    if snr_db == math.inf:
        return 0.0
    return math.sqrt(1.0 / (2.0 * snr_linear(snr_db)))


def _pam_thresholds(pam):
    mid = 0.5 * (pam[1:] + pam[:-1])
    return np.concatenate(([-np.inf], mid)), np.concatenate((mid, [np.inf]))


def pam_transition(pam, sigma):
    """Per-axis hard-detection matrix ``P[a, b] = Pr(detect b | sent a)``.

    Each entry is evaluated in whichever tail keeps full relative precision.
    """
    n = pam.size
    if sigma == 0.0:
        return np.eye(n)
    lo, hi = _pam_thresholds(pam)
    a = pam[:, None]
    zlo = (lo[None, :] - a) / sigma
    zhi = (hi[None, :] - a) / sigma
    above = zlo >= 0.0
    below = zhi <= 0.0
    with np.errstate(invalid="ignore"):
        p_above = ndtr(-zlo) - ndtr(-zhi)
        p_below = ndtr(zhi) - ndtr(zlo)
        p_own = 1.0 - ndtr(zlo) - ndtr(-zhi)
    return np.where(above, p_above, np.where(below, p_below, p_own))


def _level_mismatch(labels):
    # mismatch[i, k, j] = 1 where labels of k and j differ at level i
    return (labels[None, :, :] != labels[:, None, :]).transpose(2, 0, 1)


def _finish(c, transition, snr_db, meta):
    M = c.order
    off = transition.copy()
    np.fill_diagonal(off, 0.0)
    # summing the off-diagonal mass keeps delta accurate when it is tiny
    delta = float(off.sum() / M)
    mism = _level_mismatch(c.labels)
    eps = np.array([(transition * mism[i]).sum() / M for i in range(c.bits_per_symbol)])
    return DmcModel(
        transition=transition,
        delta=delta,
        eps_levels=eps,
        eps_bar=float(eps.mean()),
        snr_db=snr_db,
        meta=meta,
    )


def _check_square(c):
    if not isinstance(c, Constellation) or c.side**2 != c.order:
        raise ConfigurationError("hard-detection DMC requires a square QAM constellation")


def hard_dmc_analytic(c, snr_db):
    """Exact minimum-distance DMC of a square QAM at ``snr_db`` (may be ``inf``)."""
    _check_square(c)
    p_axis = pam_transition(c.pam, noise_std(snr_db))
    transition = np.kron(p_axis, p_axis)
    return _finish(c, transition, float(snr_db), {"method": "analytic"})


def bit_error_levels_pam(c, snr_db):
    """Per-level bit error probabilities from the per-axis PAM integrals alone.

    Independent of the M x M matrix; valid because Gray labels split into
    I bits and Q bits and the two axes see identical PAM statistics.
    """
    _check_square(c)
    p_axis = pam_transition(c.pam, noise_std(snr_db))
    half = c.bits_per_symbol // 2
    g = c.labels[:: c.side, :half]
    eps_axis = np.array(
        [(p_axis * (g[:, None, lvl] != g[None, :, lvl])).sum() / c.side for lvl in range(half)]
    )
    return np.concatenate([eps_axis, eps_axis])


def detect_pam(y, pam):
    """Nearest PAM index per sample; ties go to the lower index."""
    side = pam.size
    step = pam[1] - pam[0]
    u = (y - pam[0]) / step
    idx = np.ceil(u - 0.5).astype(np.int64)
    return np.clip(idx, 0, side - 1)


def _mc_chunk(args):
    pam, sigma, seed, chunk, n = args
    side = pam.size
    M = side * side
    rng = np.random.default_rng(np.random.SeedSequence([seed, chunk]))
    sym = rng.integers(0, M, size=n)
    noise = rng.standard_normal((2, n)) * sigma
    i_hat = detect_pam(pam[sym // side] + noise[0], pam)
    q_hat = detect_pam(pam[sym % side] + noise[1], pam)
    out = i_hat * side + q_hat
    return np.bincount(sym * M + out, minlength=M * M).reshape(M, M)


def mc_chunks(samples):
    """Split a sample budget into fixed-size chunks ``(index, size)``."""
    full, rest = divmod(samples, MC_CHUNK)
    sizes = [MC_CHUNK] * full + ([rest] if rest else [])
    return list(enumerate(sizes))


def hard_dmc_montecarlo(c, snr_db, samples, seed=0, workers=1):
    """Empirical DMC from ``samples`` uniform symbols through AWGN.

    The budget is cut into fixed chunks each seeded by ``(seed, chunk)``, so
    the integer counts, and hence the result, do not depend on ``workers``.
    """
    _check_square(c)
    if samples < 1:
        raise ConfigurationError("samples must be >= 1")
    sigma = noise_std(snr_db)
    jobs = [(np.asarray(c.pam), sigma, int(seed), i, n) for i, n in mc_chunks(int(samples))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_mc_chunk, jobs))
    else:
        parts = [_mc_chunk(j) for j in jobs]
    counts = np.sum(parts, axis=0)
    rows = counts.sum(axis=1, keepdims=True)
    transition = np.where(rows > 0, counts / np.maximum(rows, 1), np.eye(c.order))
    meta = {"method": "montecarlo", "samples": int(samples), "seed": int(seed)}
    return _finish(c, transition, float(snr_db), meta)


def qsc_model(q, p):
    """q-ary symmetric channel with symbol error probability ``p``.

    Bit statistics are filled in only when ``q`` is a supported square QAM
    order (Gray labels); otherwise they are ``None``.
    """
    if q < 2:
        raise ConfigurationError("q must be >= 2")
    if not 0.0 <= p <= (q - 1) / q + 1e-15:
        raise DomainError(f"p={p} outside [0, (q-1)/q]")
    transition = np.full((q, q), p / (q - 1))
    np.fill_diagonal(transition, 1.0 - p)
    if q in SUPPORTED_ORDERS:
        c = build_square_qam(q)
        model = _finish(c, transition, None, {"method": "qsc", "p": p})
        return DmcModel(transition, float(p), model.eps_levels, model.eps_bar, None, model.meta)
    return DmcModel(transition, float(p), None, None, None, {"method": "qsc", "p": p})
