"""Distance-to-SNR mapping for an EDFA-amplified WDM link under the GN model.

Each span adds ASE noise ``P_ase = NF h nu G Rs`` and nonlinear
interference ``eta P^3`` (incoherent accumulation), so after ``N`` spans

    SNR = P / (N P_ase + N eta P^3).

The default ``eta`` is the closed-form GN estimate for uniformly spaced
channels; any value can be supplied through ``nli_coefficient``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import c as C_LIGHT, h as PLANCK
from scipy.optimize import minimize_scalar

from .air import rate_at, required_snr
from .errors import ConfigurationError, DomainError

MAX_POWER_DBM = 30.0


@dataclass(frozen=True)
class LinkModel:
    span_length_km: float = 80.0
    attenuation_db_per_km: float = 0.2
    dispersion_ps_nm_km: float = 17.0
    gamma_per_w_km: float = 1.3
    wavelength_nm: float = 1550.0
    symbol_rate_gbaud: float = 32.0
    edfa_noise_figure_db: float = 4.5
    channel_count: int = 81
    channel_spacing_ghz: float = 50.0
    nli_coefficient: float | None = None

    def __post_init__(self):
        for name in ("span_length_km", "attenuation_db_per_km", "dispersion_ps_nm_km",
                     "gamma_per_w_km", "wavelength_nm", "symbol_rate_gbaud",
                     "channel_spacing_ghz"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be strictly positive")
        if self.edfa_noise_figure_db < 0:
            raise ConfigurationError("noise figure must be >= 0 dB")
        if self.channel_count < 1 or self.channel_count % 2 == 0:
            raise ConfigurationError("channel_count must be a positive odd integer")
        if self.nli_coefficient is not None and self.nli_coefficient < 0:
            raise ConfigurationError("nli_coefficient must be >= 0")

    # derived quantities, SI units unless stated

    @property
    def alpha_per_km(self):
        """Power attenuation coefficient [1/km]."""
        return self.attenuation_db_per_km * math.log(10.0) / 10.0

    @property
    def span_gain(self):
        return 10.0 ** (self.attenuation_db_per_km * self.span_length_km / 10.0)

    @property
    def effective_length_km(self):
        a = self.alpha_per_km
        return (1.0 - math.exp(-a * self.span_length_km)) / a

    @property
    def beta2_s2_per_km(self):
        lam = self.wavelength_nm * 1e-9
        d = self.dispersion_ps_nm_km * 1e-3  # ps/(nm km) -> s/(m km)
        return -d * lam**2 / (2.0 * math.pi * C_LIGHT)

    @property
    def ase_power_per_span(self):
        nu = C_LIGHT / (self.wavelength_nm * 1e-9)
        nf = 10.0 ** (self.edfa_noise_figure_db / 10.0)
        return nf * PLANCK * nu * self.span_gain * self.symbol_rate_gbaud * 1e9

    @property
    def eta_per_span(self):
        """NLI coefficient [1/W^2] per span."""
        if self.nli_coefficient is not None:
            return float(self.nli_coefficient)
        return gn_eta(self)


def gn_eta(link):
    """Closed-form GN-model NLI coefficient for the middle channel of a
    uniformly loaded WDM comb (incoherent accumulation, per span)."""
    rs = link.symbol_rate_gbaud * 1e9
    df = link.channel_spacing_ghz * 1e9
    b2 = abs(link.beta2_s2_per_km)
    leff = link.effective_length_km
    leff_a = 1.0 / link.alpha_per_km
    bw_ratio = link.channel_count ** (2.0 * rs / df)
    arg = 0.5 * math.pi**2 * b2 * leff_a * rs**2 * bw_ratio
    return (8.0 / 27.0) * link.gamma_per_w_km**2 * leff**2 * math.asinh(arg) / (
        math.pi * b2 * leff_a * rs**2
    )


def dbm_to_w(p_dbm):
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def w_to_dbm(p_w):
    return 10.0 * math.log10(p_w) + 30.0


def snr_linear_at(link, n_spans, power_w):
    if n_spans < 1:
        raise ConfigurationError("n_spans must be >= 1")
    if not power_w > 0 or not math.isfinite(power_w):
        raise DomainError(f"launch power must be positive and finite, got {power_w} W")
    noise = n_spans * (link.ase_power_per_span + link.eta_per_span * power_w**3)
    return power_w / noise


def snr_at_distance(link, n_spans, launch_power_dbm):
    """Middle-channel SNR [dB] after ``n_spans`` spans."""
    return 10.0 * math.log10(snr_linear_at(link, n_spans, dbm_to_w(launch_power_dbm)))


@dataclass(frozen=True)
class LaunchOptimum:
    power_dbm: float
    snr_db: float
    bounded: bool = True


def optimal_power_closed(link):
    """Per-channel power [W] where NLI equals half the ASE; None if eta == 0."""
    eta = link.eta_per_span
    if eta == 0.0:
        return None
    return (link.ase_power_per_span / (2.0 * eta)) ** (1.0 / 3.0)


def optimize_launch_power(link, n_spans, method="closed", max_power_dbm=MAX_POWER_DBM):
    """Launch power maximizing the middle-channel SNR.

    ``method="closed"`` uses the stationarity condition of ``P/(a + b P^3)``;
    ``method="golden"`` searches numerically in dBm. With ``eta = 0`` the SNR
    grows without bound and the configured maximum power is returned with
    ``bounded=False``.
    """
    if link.eta_per_span == 0.0:
        return LaunchOptimum(max_power_dbm, snr_at_distance(link, n_spans, max_power_dbm), False)
    if method == "closed":
        p = w_to_dbm(optimal_power_closed(link))
    elif method == "golden":
        grid = np.arange(-40.0, max_power_dbm + 0.25, 0.5)
        k = int(np.argmax([snr_at_distance(link, n_spans, g) for g in grid]))
        k = min(max(k, 1), grid.size - 2)
        res = minimize_scalar(lambda p: -snr_at_distance(link, n_spans, p),
                              bracket=(grid[k - 1], grid[k], grid[k + 1]), method="golden",
                              tol=1e-10)
        p = float(res.x)
    else:
        raise ConfigurationError(f"unknown method {method!r}")
    return LaunchOptimum(p, snr_at_distance(link, n_spans, p))


@dataclass(frozen=True)
class ReachResult:
    scheme: str
    target_rate: float
    n_spans: int
    distance_km: float
    required_snr_db: float


def reach(link, c, scheme, target_rate, max_spans=10000):
    """Longest integer-span distance whose optimized SNR still yields
    ``rate(scheme) >= target_rate`` (bits per symbol, one polarization)."""
    m = c.bits_per_symbol
    if not 0.0 < target_rate < m:
        raise DomainError(f"target rate {target_rate} unreachable for {c.order}-QAM (max {m})")
    req = required_snr(c, scheme, target_rate, snr_bracket=(-30.0, 80.0), tol_db=1e-4)
    # SNR at the optimum power falls exactly as 1/N, so solve for N directly
    # and then confirm against the actual rate to absorb bisection slack.
    snr1 = optimize_launch_power(link, 1).snr_db
    n = int(math.floor(10.0 ** ((snr1 - req) / 10.0)))
    n = min(n, max_spans)
    while n >= 1 and rate_at(c, scheme, optimize_launch_power(link, n).snr_db) < target_rate:
        n -= 1
    while n < max_spans and rate_at(c, scheme, optimize_launch_power(link, n + 1).snr_db) >= target_rate:
        n += 1
    if n < 1:
        raise DomainError(f"target rate {target_rate} not reached even over a single span")
    return ReachResult(scheme, target_rate, n, n * link.span_length_km, req)


def distance_profile(link, c, schemes, n_spans_list):
    """Rows ``(distance_km, snr_db, {scheme: rate})`` at the optimal power."""
    rows = []
    for n in n_spans_list:
        snr = optimize_launch_power(link, n).snr_db
        rows.append((n * link.span_length_km, snr, {s: rate_at(c, s, snr) for s in schemes}))
    return rows


def with_nli(link, eta):
    return replace(link, nli_coefficient=eta)
