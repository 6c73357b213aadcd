"""Square QAM constellations with per-axis binary-reflected Gray labels.

Point ``k`` sits at row-major position ``(i_idx, q_idx)`` with
``k = i_idx * L + q_idx`` where ``L = sqrt(M)``; PAM amplitudes grow with
the axis index. The label of point ``k`` is the Gray code of ``i_idx``
followed by the Gray code of ``q_idx`` (MSB first).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

SUPPORTED_ORDERS = (4, 16, 64, 256)


def gray_code(n_bits):
    """Binary-reflected Gray code table, shape ``(2**n_bits, n_bits)``, MSB first."""
    idx = np.arange(2**n_bits)
    g = idx ^ (idx >> 1)
    shifts = np.arange(n_bits - 1, -1, -1)
    return ((g[:, None] >> shifts) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class Constellation:
    points: np.ndarray
    labels: np.ndarray
    pam: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.points.size

    @property
    def bits_per_symbol(self) -> int:
        return self.labels.shape[1]

    @property
    def side(self) -> int:
        """Number of PAM levels per axis."""
        return self.pam.size

    def to_dict(self):
        return {
            "order": self.order,
            "bits_per_symbol": self.bits_per_symbol,
            "labeling": "gray",
            "points": [[float(p.real), float(p.imag)] for p in self.points],
            "labels": ["".join(str(b) for b in row) for row in self.labels],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def build_square_qam(order, labeling="gray"):
    """Unit-average-energy square QAM.

    Parameters
    ----------
    order : int
        Constellation size, one of 4, 16, 64, 256.
    labeling : str
        Only ``"gray"`` is supported.
    """
    if order not in SUPPORTED_ORDERS:
        raise ConfigurationError(
            f"unsupported QAM order {order!r}; accepted orders: {', '.join(map(str, SUPPORTED_ORDERS))}"
        )
    if labeling != "gray":
        raise ConfigurationError(f"unsupported labeling {labeling!r}; only 'gray' is available")
    side = int(round(np.sqrt(order)))
    half_bits = side.bit_length() - 1
    amp = 2.0 * np.arange(side) - (side - 1)
    # per-axis energy E[a^2] = (side^2 - 1)/3 scaled to 1/2
    amp = amp / np.sqrt(2.0 * (side**2 - 1) / 3.0)
    points = (amp[:, None] + 1j * amp[None, :]).ravel()
    g = gray_code(half_bits)
    labels = np.concatenate(
        [np.repeat(g, side, axis=0), np.tile(g, (side, 1))], axis=1
    )
    points.setflags(write=False)
    labels.setflags(write=False)
    amp.setflags(write=False)
    return Constellation(points=points, labels=labels, pam=amp)


def bit_of_label(c, symbol_index, level):
    if not 0 <= symbol_index < c.order:
        raise IndexError(f"symbol index {symbol_index} outside [0, {c.order})")
    if not 0 <= level < c.bits_per_symbol:
        raise IndexError(f"bit level {level} outside [0, {c.bits_per_symbol})")
    return int(c.labels[symbol_index, level])


def parse_modulation(name):
    """Accept ``"64qam"``, ``"64-QAM"``, ``"qpsk"`` or a bare integer."""
    s = str(name).strip().lower().replace("-", "").replace("_", "")
    if s == "qpsk":
        return 4
    if s.endswith("qam"):
        s = s[:-3]
    try:
        order = int(s)
    except ValueError:
        raise ConfigurationError(f"cannot parse modulation {name!r}") from None
    if order not in SUPPORTED_ORDERS:
        raise ConfigurationError(
            f"unsupported QAM order {order}; accepted orders: {', '.join(map(str, SUPPORTED_ORDERS))}"
        )
    return order
