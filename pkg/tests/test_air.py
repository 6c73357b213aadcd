import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hdair.air import (SCHEMES, air, air_hdchad_bw, air_hdchad_sw, binary_entropy, gmi_hdd_bw,
                       gmi_hdd_sw_closed, gmi_hdd_sw_numeric, mi_sdd_sw, rate_at, required_snr,
                       sweep)
from hdair.channel import DmcModel, hard_dmc_analytic, qsc_model
from hdair.constellation import build_square_qam
from hdair.errors import BracketError, ConfigurationError, DegenerateChannelError, DomainError
from hdair.oracles import mc_mutual_information

ORDERS = [4, 16, 64, 256]


def test_binary_entropy_values():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.11) == pytest.approx(0.4999, abs=1e-3)


@pytest.mark.parametrize("order", [4, 16])
def test_separable_equals_tensor_rule(order):
    c = build_square_qam(order)
    for snr in (0.0, 10.0, 20.0):
        a, _ = mi_sdd_sw(c, snr)
        b, _ = mi_sdd_sw(c, snr, separable=False)
        assert a == pytest.approx(b, abs=1e-10)


@pytest.mark.parametrize("order,snr", [(16, 6.0), (64, 14.0)])
def test_quadrature_vs_montecarlo_oracle(order, snr):
    c = build_square_qam(order)
    gh, _ = mi_sdd_sw(c, snr)
    mc, se = mc_mutual_information(c, snr, samples=400_000, seed=11)
    assert abs(gh - mc) < 5 * se + 1e-3


def test_qpsk_equals_twice_bpsk():
    # BPSK MI at amplitude a with noise sigma computed by direct 1-D integration
    from scipy.integrate import quad
    snr = 3.0
    c = build_square_qam(4)
    s = math.sqrt(1 / (2 * 10 ** (snr / 10)))
    a = 1 / math.sqrt(2)

    def integrand(y):
        p = 0.5 * (np.exp(-(y - a) ** 2 / (2 * s * s)) + np.exp(-(y + a) ** 2 / (2 * s * s)))
        p /= math.sqrt(2 * math.pi) * s
        return -p * math.log2(p) if p > 0 else 0.0

    h_y = quad(integrand, -a - 14 * s, a + 14 * s, points=[-a, 0.0, a], limit=400,
               epsabs=1e-13, epsrel=1e-13)[0]
    h_n = 0.5 * math.log2(2 * math.pi * math.e * s * s)
    ref = 2 * (h_y - h_n)
    assert mi_sdd_sw(c, snr, nodes=256)[0] == pytest.approx(ref, abs=1e-11)
    assert mi_sdd_sw(c, snr)[0] == pytest.approx(ref, abs=1e-7)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDERS), st.floats(-5, 35))
def test_ordering(order, snr):
    c = build_square_qam(order)
    r = {s: air(c, s, snr).rate for s in SCHEMES}
    slack = 1e-9
    assert r["hdd_sw"] <= r["hdchad_sw"] + slack
    assert r["hdchad_sw"] <= r["sdd_sw"] + slack
    assert r["hdd_bw"] <= r["hdchad_bw"] + slack
    assert r["hdchad_bw"] <= r["sdd_sw"] + slack
    assert all(-slack <= v <= math.log2(order) + slack for v in r.values())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ORDERS), st.floats(-5, 30))
def test_numeric_gmi_attained_at_unit_s(order, snr):
    dmc = hard_dmc_analytic(build_square_qam(order), snr)
    if dmc.delta <= 1e-15:
        return
    rate, s_star = gmi_hdd_sw_numeric(dmc)
    assert rate == pytest.approx(gmi_hdd_sw_closed(dmc.delta, order), abs=1e-9)
    assert abs(s_star - 1.0) < 0.01


@given(st.sampled_from(ORDERS), st.floats(1e-6, 1.0))
def test_qsc_identity(q, frac):
    p = frac * (q - 1) / q
    assert air_hdchad_sw(qsc_model(q, p)) == pytest.approx(gmi_hdd_sw_closed(p, q), abs=1e-12)


def test_closed_form_edges():
    assert gmi_hdd_sw_closed(0.0, 16) == 4.0
    assert gmi_hdd_sw_closed(15 / 16, 16) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        gmi_hdd_sw_closed(0.99, 16)


def test_numeric_degenerate():
    dmc = hard_dmc_analytic(build_square_qam(16), math.inf)
    with pytest.raises(DegenerateChannelError):
        gmi_hdd_sw_numeric(dmc)


def test_bitwise_edges():
    assert air_hdchad_bw(np.zeros(6)) == 6.0
    assert gmi_hdd_bw(0.5, 4) == pytest.approx(0.0)
    with pytest.raises(DomainError):
        gmi_hdd_bw(0.6, 4)


def test_bad_rows_rejected():
    bad = DmcModel(transition=np.full((4, 4), 0.3), delta=0.9, eps_levels=np.zeros(2),
                   eps_bar=0.0)
    with pytest.raises(ConfigurationError):
        air_hdchad_sw(bad)


def test_high_snr_limits():
    c = build_square_qam(64)
    for s in SCHEMES:
        assert rate_at(c, s, 45.0) == pytest.approx(6.0, abs=1e-6)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_required_snr_roundtrip(scheme):
    c = build_square_qam(16)
    snr = required_snr(c, scheme, 3.0, tol_db=1e-4)
    assert rate_at(c, scheme, snr + 1e-3) >= 3.0 > rate_at(c, scheme, snr - 1e-3)


def test_required_snr_bracket_errors():
    c = build_square_qam(16)
    with pytest.raises(BracketError):
        required_snr(c, "hdd_bw", 3.0, snr_bracket=(-20.0, 0.0))
    with pytest.raises(BracketError):
        required_snr(c, "hdd_bw", 4.0)


def test_sweep_order_and_workers():
    c = build_square_qam(16)
    a = sweep(c, [0.0, 5.0], ["hdd_sw", "sdd_sw"])
    assert [(p.snr_db, p.scheme) for p in a] == [(0.0, "hdd_sw"), (0.0, "sdd_sw"),
                                                  (5.0, "hdd_sw"), (5.0, "sdd_sw")]
    b = sweep(c, [0.0, 5.0], ["hdd_sw", "sdd_sw"], workers=2)
    assert [p.rate for p in a] == [p.rate for p in b]


def test_unknown_scheme():
    with pytest.raises(ConfigurationError):
        air(build_square_qam(4), "ml", 3.0)
