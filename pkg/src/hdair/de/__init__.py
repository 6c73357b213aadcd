"""Density evolution for nonbinary GLDPC / staircase codes with RS components."""
from ._backend import BACKEND
from .evolution import (GLDPC, MODES, DeConfig, DeState, ThresholdResult, de_gldpc,
                        de_scgldpc, de_window, f_update, f_update_many, run_de,
                        spectral_efficiency, threshold)
from .miscorrection import p_bar_n, p_bar_n_exact, p_n, p_n_exact, tables
from .weights import ComponentCodeSpec, full_length_weight, mds_weight, rs_weight_distribution

__all__ = [
    "BACKEND", "GLDPC", "MODES", "ComponentCodeSpec", "DeConfig", "DeState",
    "ThresholdResult", "de_gldpc", "de_scgldpc", "de_window", "f_update", "f_update_many",
    "full_length_weight", "mds_weight", "p_bar_n", "p_bar_n_exact", "p_n", "p_n_exact",
    "rs_weight_distribution", "run_de", "spectral_efficiency", "tables", "threshold",
]
