"""Density evolution for GLDPC / SC-GLDPC ensembles with RS components.

Iterative BDD over a q-ary symmetric channel with symbol error probability
``p_s``. ``mode="miscorrection_aware"`` uses the exact RS miscorrection
tables, ``mode="idealized"`` assumes a component decoder that fails
(never miscorrects) beyond ``t`` errors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import gammaln

from ..errors import BracketError, ConfigurationError, DomainError
from ._backend import BACKEND, kernels
from .miscorrection import tables

MODES = ("miscorrection_aware", "idealized")


@dataclass(frozen=True)
class DeConfig:
    L: int = 50
    w: int = 2
    W: int | str = "full"
    max_iters: int = 1000
    convergence_tol: float = 1e-14
    target_error: float = 1e-6
    mode: str = "miscorrection_aware"

    def __post_init__(self):
        if self.w < 1 or self.L < self.w:
            raise ConfigurationError(f"need w >= 1 and L >= w (L={self.L}, w={self.w})")
        if self.W != "full" and not (isinstance(self.W, int) and 1 <= self.W <= self.L):
            raise ConfigurationError(f"window size must be 'full' or in [1, L]; got {self.W!r}")
        if self.max_iters < 1:
            raise ConfigurationError("max_iters must be >= 1")
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}")
        if not 0.0 < self.target_error < 1.0:
            raise ConfigurationError("target_error must lie in (0, 1)")

    @property
    def window(self):
        return self.L if self.W == "full" else self.W

    def to_dict(self):
        return {"L": self.L, "w": self.w, "W": self.W, "max_iters": self.max_iters,
                "convergence_tol": self.convergence_tol, "target_error": self.target_error,
                "mode": self.mode}


GLDPC = DeConfig(L=1, w=1, max_iters=10000)


@dataclass
class DeState:
    x: np.ndarray
    iteration: int = 0
    trace: list = field(default_factory=list, repr=False)

    @property
    def post_fec_error(self):
        """Average symbol error probability over the spatial positions."""
        return float(np.mean(self.x))


def _logc(n):
    m = n - 1
    i = np.arange(m + 1)
    return gammaln(m + 1) - gammaln(i + 1) - gammaln(m - i + 1)


def _prepared(spec, mode):
    P, Pbar = tables(spec, mode)
    return (np.ascontiguousarray(P, dtype=float), np.ascontiguousarray(Pbar, dtype=float),
            _logc(spec.n))


def _check_prob(name, v):
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"{name}={v} outside [0, 1]")


def f_update(spec, x, p_s, mode="miscorrection_aware"):
    """One CN->VN update: expected post-BDD error of a symbol whose n-1
    companions are independently wrong with probability ``x``."""
    _check_prob("x", x)
    _check_prob("p_s", p_s)
    P, Pbar, logc = _prepared(spec, mode)
    return float(kernels.f_eval(np.array([float(x)]), float(p_s), P, Pbar, logc)[0])


def f_update_many(spec, xs, p_s, mode="miscorrection_aware"):
    P, Pbar, logc = _prepared(spec, mode)
    return np.asarray(kernels.f_eval(np.asarray(xs, dtype=float), float(p_s), P, Pbar, logc))


def de_gldpc(spec, p_s, config=GLDPC):
    """Uncoupled fixed-point iteration ``x <- f(x; p_s)`` from ``x = p_s``.

    Returns ``(final_x, iterations)``; non-convergence is not an error.
    """
    _check_prob("p_s", p_s)
    P, Pbar, logc = _prepared(spec, config.mode)
    x = np.array([float(p_s)])
    it = kernels.sc_run(x, 0, 1, 1, float(p_s), P, Pbar, logc,
                        config.max_iters, config.convergence_tol)
    return float(x[0]), int(it)


def _run(x, lo, hi, w, p_s, prepared, config, trace, window_idx, it0):
    P, Pbar, logc = prepared
    if trace is None:
        return int(kernels.sc_run(x, lo, hi, w, p_s, P, Pbar, logc,
                                  config.max_iters, config.convergence_tol))
    it = 0
    while it < config.max_iters:
        it += 1
        diff = kernels.sc_step(x, lo, hi, w, p_s, P, Pbar, logc)
        trace.append((it0 + it, window_idx, x.copy()))
        if diff < config.convergence_tol:
            break
    return it


def de_scgldpc(spec, p_s, config, trace=False):
    """Coupled DE over all ``L`` positions at once (no windowing).

    Positions outside ``[1, L]`` are fixed at zero. With ``trace=True`` the
    state after every iteration is kept in ``DeState.trace``.
    """
    _check_prob("p_s", p_s)
    x = np.full(config.L, float(p_s))
    tr = [] if trace else None
    if trace:
        tr.append((0, 0, x.copy()))
    it = _run(x, 0, config.L, config.w, float(p_s), _prepared(spec, config.mode), config,
              tr, 0, 0)
    return DeState(x=x, iteration=it, trace=tr or [])


def de_window(spec, p_s, config, trace=False):
    """Sliding-window DE.

    Window ``j`` covers positions ``[j, j + W)``; it is iterated (up to
    ``max_iters``, early exit on convergence) while every other position
    keeps its current value: already-passed positions keep their decoded
    value, positions not yet reached stay at ``p_s``. The window then
    advances by one position and its leftmost position is frozen.
    """
    _check_prob("p_s", p_s)
    W = config.window
    x = np.full(config.L, float(p_s))
    prepared = _prepared(spec, config.mode)
    tr = [] if trace else None
    if trace:
        tr.append((0, 0, x.copy()))
    total = 0
    for j in range(config.L - W + 1):
        total += _run(x, j, j + W, config.w, float(p_s), prepared, config, tr, j, total)
    return DeState(x=x, iteration=total, trace=tr or [])


def run_de(spec, p_s, config, trace=False):
    """Dispatch to full or windowed SC-DE based on ``config.W``."""
    if config.W == "full" or config.W == config.L:
        return de_scgldpc(spec, p_s, config, trace)
    return de_window(spec, p_s, config, trace)


@dataclass(frozen=True)
class ThresholdResult:
    p_star: float
    iterations_used: int
    evaluations: int
    post_fec_error: float


def threshold(spec, config, bracket=None, tol=1e-5):
    """Largest ``p_s`` whose DE post-FEC error is at most ``config.target_error``."""
    if bracket is None:
        bracket = (0.0, (spec.q - 1) / spec.q)
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise BracketError(f"degenerate bracket ({lo}, {hi})")
    if lo < 0.0 or hi > 1.0:
        raise BracketError("bracket must lie inside [0, 1]")

    def ok(p):
        st = run_de(spec, p, config)
        return st.post_fec_error <= config.target_error, st

    good, st_lo = ok(lo)
    bad, _ = ok(hi)
    if not good or bad:
        raise BracketError(
            f"DE must meet the target at p_s={lo} and miss it at p_s={hi}"
        )
    best = st_lo
    evals = 2
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        good, st = ok(mid)
        evals += 1
        if good:
            lo, best = mid, st
        else:
            hi = mid
    return ThresholdResult(lo, best.iteration, evals, best.post_fec_error)


def spectral_efficiency(spec, coupled=True):
    """Code rate times log2 q (bits per channel use)."""
    rate = spec.staircase_rate if coupled else spec.k / spec.n
    return rate * math.log2(spec.q)


__all__ = ["BACKEND", "DeConfig", "DeState", "GLDPC", "MODES", "ThresholdResult",
           "de_gldpc", "de_scgldpc", "de_window", "f_update", "f_update_many", "run_de",
           "spectral_efficiency", "threshold", "replace"]
