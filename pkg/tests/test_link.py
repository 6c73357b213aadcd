import math

import pytest
from hypothesis import given, settings, strategies as st

from hdair.air import rate_at
from hdair.constellation import build_square_qam
from hdair.errors import ConfigurationError, DomainError
from hdair.link import (LinkModel, dbm_to_w, distance_profile, optimal_power_closed,
                        optimize_launch_power, reach, snr_at_distance, w_to_dbm,
                        with_nli)

LINK = LinkModel()


def test_ase_hand_value():
    # NF 4.5 dB, 16 dB span loss, 1550 nm, 32 GBd
    nu = 299792458.0 / 1550e-9
    ref = 10 ** 0.45 * 6.62607015e-34 * nu * 10 ** 1.6 * 32e9
    assert LINK.ase_power_per_span == pytest.approx(ref, rel=1e-12)


def test_eta_scaling():
    assert with_nli(LINK, None).eta_per_span == pytest.approx(LINK.eta_per_span)
    double_gamma = LinkModel(gamma_per_w_km=2 * LINK.gamma_per_w_km)
    assert double_gamma.eta_per_span == pytest.approx(4 * LINK.eta_per_span, rel=1e-12)
    assert LinkModel(channel_count=121).eta_per_span > LINK.eta_per_span
    assert 1e2 < LINK.eta_per_span < 1e4


@pytest.mark.parametrize("n", [1, 10, 40])
def test_closed_and_golden_agree(n):
    a = optimize_launch_power(LINK, n, "closed")
    b = optimize_launch_power(LINK, n, "golden")
    assert a.power_dbm == pytest.approx(b.power_dbm, abs=1e-3)
    assert a.snr_db == pytest.approx(b.snr_db, abs=1e-9)


def test_optimum_nli_is_half_ase():
    p = optimal_power_closed(LINK)
    assert LINK.eta_per_span * p**3 == pytest.approx(LINK.ase_power_per_span / 2, rel=1e-12)


@settings(max_examples=20)
@given(st.integers(1, 200))
def test_optimum_snr_falls_as_one_over_n(n):
    s1 = optimize_launch_power(LINK, 1).snr_db
    assert optimize_launch_power(LINK, n).snr_db == pytest.approx(s1 - 10 * math.log10(n),
                                                                  abs=1e-9)


@pytest.mark.parametrize("n", [1, 5, 25])
def test_linear_regime_doubling(n):
    lin = with_nli(LINK, 0.0)
    drop = snr_at_distance(lin, n, 0.0) - snr_at_distance(lin, 2 * n, 0.0)
    assert drop == pytest.approx(3.0103, abs=0.01)
    low = snr_at_distance(LINK, n, -25.0) - snr_at_distance(LINK, 2 * n, -25.0)
    assert low == pytest.approx(3.0103, abs=0.01)


def test_unbounded_without_nli():
    opt = optimize_launch_power(with_nli(LINK, 0.0), 3)
    assert not opt.bounded and opt.power_dbm == 30.0


def test_dbm_roundtrip():
    assert dbm_to_w(0.0) == pytest.approx(1e-3)
    assert w_to_dbm(dbm_to_w(-7.3)) == pytest.approx(-7.3)


def test_reach_is_tight():
    c = build_square_qam(16)
    r = reach(LINK, c, "hdd_bw", 3.0)
    at = lambda n: rate_at(c, "hdd_bw", optimize_launch_power(LINK, n).snr_db)
    assert at(r.n_spans) >= 3.0 > at(r.n_spans + 1)
    assert r.distance_km == r.n_spans * 80.0


@pytest.mark.parametrize("order,target", [(16, 3.0), (64, 4.0), (256, 5.0)])
def test_bitwise_reaches_further(order, target):
    c = build_square_qam(order)
    bw = reach(LINK, c, "hdd_bw", target).n_spans
    sw = reach(LINK, c, "hdd_sw", target).n_spans
    assert bw >= sw


def test_more_nli_less_reach():
    c = build_square_qam(64)
    a = reach(LINK, c, "hdd_bw", 4.0).n_spans
    b = reach(with_nli(LINK, 4 * LINK.eta_per_span), c, "hdd_bw", 4.0).n_spans
    assert b < a


def test_profile_rows():
    rows = distance_profile(LINK, build_square_qam(16), ["hdd_sw", "hdd_bw"], [1, 2])
    assert [r[0] for r in rows] == [80.0, 160.0]
    assert rows[0][2]["hdd_bw"] >= rows[1][2]["hdd_bw"]


def test_validation():
    with pytest.raises(ConfigurationError):
        LinkModel(channel_count=80)
    with pytest.raises(ConfigurationError):
        LinkModel(span_length_km=0)
    with pytest.raises(DomainError):
        reach(LINK, build_square_qam(16), "hdd_bw", 4.0)
