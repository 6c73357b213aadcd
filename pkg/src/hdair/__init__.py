"""Achievable information rates of hard-decision coded modulation and density
evolution of nonbinary staircase codes."""

__version__ = "0.1.0"

from .air import (SCHEMES, AirPoint, air, air_hdchad_bw, air_hdchad_sw, gmi_hdd_bw,  # noqa: E402
                  gmi_hdd_sw_closed, gmi_hdd_sw_numeric, mi_sdd_sw, required_snr)
from .channel import DmcModel, hard_dmc_analytic, hard_dmc_montecarlo, qsc_model  # noqa: E402
from .constellation import Constellation, bit_of_label, build_square_qam  # noqa: E402

__all__ = [
    "SCHEMES", "AirPoint", "Constellation", "DmcModel", "air", "air_hdchad_bw", "air_hdchad_sw",
    "bit_of_label", "build_square_qam", "gmi_hdd_bw", "gmi_hdd_sw_closed", "gmi_hdd_sw_numeric",
    "hard_dmc_analytic", "hard_dmc_montecarlo", "mi_sdd_sw", "qsc_model", "required_snr",
]
