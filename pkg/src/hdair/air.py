"""Achievable information rates for five detection/decoding schemes.

Schemes
-------
sdd_sw     symbol-wise soft decision, I(X;Y)
hdchad_sw  hard detection + channel-aware decoding, I(X;X_hat)
hdd_sw     hard detection + Hamming-metric decoding (GMI), symbol-wise
hdchad_bw  m parallel BSCs with per-level reliabilities
hdd_bw     BICM with Hamming-metric decoding (GMI)

All rates are in bits per channel use (one complex symbol, one polarization).
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp, xlogy

from .channel import hard_dmc_analytic, noise_std
from .errors import BracketError, ConfigurationError, DegenerateChannelError, DomainError

SCHEMES = ("sdd_sw", "hdchad_sw", "hdd_sw", "hdchad_bw", "hdd_bw")
GH_NODES = 64
S_GRID = (0.05, 4.0, 0.05)
LOG_FLOOR = 1e-300
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class AirPoint:
    scheme: str
    snr_db: float
    rate: float
    stderr: float = 0.0


def binary_entropy(p):
    """h_b(p) in bits with h_b(0) = h_b(1) = 0."""
    p = np.asarray(p, dtype=float)
    out = -(xlogy(p, p) + xlogy(1.0 - p, 1.0 - p)) / _LN2
    return float(out) if out.ndim == 0 else out


# --- symbol-wise soft decision -------------------------------------------

def _gh_rule(nodes):
    x, w = hermgauss(nodes)
    # E[g(Z)] for Z ~ N(0, 1) is sum(w * g(sqrt(2) x)) / sqrt(pi)
    return math.sqrt(2.0) * x, w / math.sqrt(math.pi)


def _mi_gh_generic(points, sigma, nodes, block=64):
    """Tensor-product Gauss-Hermite over both noise axes, any point set."""
    z, w = _gh_rule(nodes)
    nz = (z[:, None] + 1j * z[None, :]).ravel() * sigma
    nw = (w[:, None] * w[None, :]).ravel()
    M = points.size
    inv = 1.0 / (2.0 * sigma**2)
    total = 0.0
    for start in range(0, M, block):
        x = points[start:start + block]
        y = x[:, None] + nz[None, :]
        d = np.abs(y[:, :, None] - points[None, None, :]) ** 2
        lse = logsumexp(-d * inv, axis=2)
        own = -np.abs(nz) ** 2 * inv
        total += float(((own[None, :] - lse) * nw[None, :]).sum())
    return math.log2(M) + total / (M * _LN2)


def _mi_gh_pam(pam, sigma, nodes):
    z, w = _gh_rule(nodes)
    n = z * sigma
    inv = 1.0 / (2.0 * sigma**2)
    y = pam[:, None] + n[None, :]
    lse = logsumexp(-((y[:, :, None] - pam[None, None, :]) ** 2) * inv, axis=2)
    own = -(n**2) * inv
    total = float(((own[None, :] - lse) * w[None, :]).sum())
    return math.log2(pam.size) + total / (pam.size * _LN2)


def mi_sdd_sw(c, snr_db, method="gauss_hermite", nodes=GH_NODES, samples=10**6, seed=0,
              separable=True):
    """I(X;Y) for uniform inputs.

    With ``method="gauss_hermite"`` the 2-D tensor rule is used. For square
    QAM the integrand splits into an I part and a Q part, and the tensor rule
    then equals the sum of the two 1-D rules exactly; ``separable=False``
    forces the literal 2-D evaluation. Returns ``(rate, stderr)``.
    """
    if method == "gauss_hermite":
        if nodes < 10:
            raise ConfigurationError("Gauss-Hermite needs at least 10 nodes per axis")
        sigma = noise_std(snr_db)
        m = math.log2(c.order)
        if sigma == 0.0:
            return m, 0.0
        if separable and c.side**2 == c.order:
            rate = 2.0 * _mi_gh_pam(np.asarray(c.pam), sigma, nodes)
        else:
            rate = _mi_gh_generic(np.asarray(c.points), sigma, nodes)
        return min(max(rate, 0.0), m), 0.0
    if method == "monte_carlo":
        from .oracles import mc_mutual_information

        return mc_mutual_information(c, snr_db, samples, seed)
    raise ConfigurationError(f"unknown SDD method {method!r}")


# --- hard detection, channel-aware --------------------------------------

def _check_rows(P):
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ConfigurationError("transition matrix must be square")
    if np.any(P < 0) or np.max(np.abs(P.sum(axis=1) - 1.0)) > 1e-6:
        raise ConfigurationError("transition matrix rows must be probability vectors")
    return P


def air_hdchad_sw(dmc):
    """I(X; X_hat) of the hard-detection DMC with uniform input."""
    P = _check_rows(getattr(dmc, "transition", dmc))
    M = P.shape[0]
    col = P.sum(axis=0) / M
    ratio = np.maximum(P, LOG_FLOOR) / np.maximum(col, LOG_FLOOR)[None, :]
    return float(np.sum(np.where(P > 0, P * np.log2(ratio), 0.0)) / M)


# --- Hamming-metric symbol-wise GMI --------------------------------------

def gmi_hdd_sw_closed(delta, order):
    """log2 M - h_b(delta) - delta log2(M-1)."""
    M = int(order)
    if not 0.0 <= delta <= (M - 1) / M + 1e-15:
        raise DomainError(
            f"symbol error probability {delta} exceeds (M-1)/M, the error rate without observation"
        )
    delta = min(delta, (M - 1) / M)
    return max(math.log2(M) - binary_entropy(delta) - delta * math.log2(M - 1), 0.0)


def _hamming_gmi_excess(P, delta):
    """``I(s) - log2 M`` in nats for the symmetric metric at eps = delta.

    Written through ``rho = delta / ((M-1)(1-delta))`` and ``log1p`` so the
    value keeps full relative precision when delta is tiny and the curve
    sits just below log2 M.
    """
    M = P.shape[0]
    eq = np.eye(M, dtype=bool)
    diag = float(np.trace(P))
    off = float(np.sum(np.where(eq, 0.0, P)))
    log_rho = math.log(delta) - math.log(M - 1) - math.log1p(-delta)

    def excess(s):
        shared = -math.log1p((M - 1) * math.exp(s * log_rho))
        return ((diag + off) * shared + off * s * log_rho) / M

    return excess


def gmi_hdd_sw_numeric(dmc, s_grid=S_GRID, xtol=1e-6):
    """Maximize the Hamming-metric GMI over s > 0.

    Only ``dmc.delta`` enters the metric; the expectation runs over the full
    matrix. Returns ``(rate, s_star)``.
    """
    P = _check_rows(dmc.transition)
    M = P.shape[0]
    delta = dmc.delta
    if delta <= 0.0 or delta >= (M - 1) / M:
        raise DegenerateChannelError(
            f"delta={delta} makes the Hamming metric degenerate; use gmi_hdd_sw_closed"
        )
    excess = _hamming_gmi_excess(P, delta)
    lo, hi, step = s_grid
    grid = np.arange(lo, hi + step / 2, step)
    vals = np.array([excess(s) for s in grid])
    k = int(np.argmax(vals))
    # rescale so the optimizer sees O(1) differences even for tiny delta
    scale = abs(vals[k]) or 1.0
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    res = minimize_scalar(lambda s: -excess(s) / scale, bounds=(a, b), method="bounded",
                          options={"xatol": xtol})
    s_star, best = float(res.x), -float(res.fun) * scale
    if vals[k] > best:
        s_star, best = float(grid[k]), float(vals[k])
    return max(math.log2(M) + best / _LN2, 0.0), s_star


# --- bit-wise ------------------------------------------------------------

def _check_bsc(eps):
    eps = np.asarray(eps, dtype=float)
    if np.any(eps < 0.0) or np.any(eps > 0.5 + 1e-12):
        raise DomainError("bit error probabilities must lie in [0, 1/2]")
    return np.minimum(eps, 0.5)


def air_hdchad_bw(eps_levels):
    """m - sum_i h_b(eps_i)."""
    eps = _check_bsc(eps_levels)
    return float(eps.size - np.sum(binary_entropy(eps)))


def gmi_hdd_bw(eps_bar, m):
    """m (1 - h_b(eps_bar))."""
    eps = float(_check_bsc(eps_bar))
    return m * (1.0 - binary_entropy(eps))


# --- dispatch ------------------------------------------------------------

def air(c, scheme, snr_db, method="gauss_hermite", nodes=GH_NODES, samples=10**6, seed=0):
    """Rate of ``scheme`` at ``snr_db``; returns an :class:`AirPoint`."""
    if scheme == "sdd_sw":
        rate, se = mi_sdd_sw(c, snr_db, method=method, nodes=nodes, samples=samples, seed=seed)
        return AirPoint(scheme, snr_db, rate, se)
    if scheme not in SCHEMES:
        raise ConfigurationError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
    dmc = hard_dmc_analytic(c, snr_db)
    if scheme == "hdchad_sw":
        rate = air_hdchad_sw(dmc)
    elif scheme == "hdd_sw":
        rate = gmi_hdd_sw_closed(dmc.delta, c.order)
    elif scheme == "hdchad_bw":
        rate = air_hdchad_bw(dmc.eps_levels)
    else:
        rate = gmi_hdd_bw(dmc.eps_bar, c.bits_per_symbol)
    return AirPoint(scheme, snr_db, rate)


def rate_at(c, scheme, snr_db):
    return air(c, scheme, snr_db).rate


def required_snr(c, scheme, target_rate, snr_bracket=(-20.0, 60.0), tol_db=0.01):
    """Smallest SNR [dB] where ``scheme`` reaches ``target_rate`` (bisection)."""
    m = c.bits_per_symbol
    if not 0.0 < target_rate < m:
        raise BracketError(f"target rate {target_rate} must lie strictly inside (0, {m})")
    lo, hi = map(float, snr_bracket)
    if not lo < hi:
        raise BracketError("SNR bracket must satisfy low < high")
    r_lo, r_hi = rate_at(c, scheme, lo), rate_at(c, scheme, hi)
    if not r_lo < target_rate <= r_hi:
        raise BracketError(
            f"rates {r_lo:.6g}..{r_hi:.6g} over [{lo}, {hi}] dB do not straddle {target_rate}"
        )
    while hi - lo > tol_db / 2:
        mid = 0.5 * (lo + hi)
        if rate_at(c, scheme, mid) >= target_rate:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _sweep_point(args):
    c_order, scheme, snr, method, nodes, samples, seed = args
    from .constellation import build_square_qam

    return air(build_square_qam(c_order), scheme, snr, method, nodes, samples, seed)


def sweep(c, snrs, schemes=SCHEMES, method="gauss_hermite", nodes=GH_NODES, samples=10**6,
          seed=0, workers=1):
    """Evaluate every (snr, scheme) pair; output order is SNR-major, scheme-minor."""
    jobs = [(c.order, s, float(snr), method, nodes, samples, seed)
            for snr in snrs for s in schemes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_sweep_point, jobs))
    return [_sweep_point(j) for j in jobs]
