import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import norm

from hdair.channel import (bit_error_levels_pam, detect_pam, hard_dmc_analytic,
                           hard_dmc_montecarlo, mc_chunks, noise_std, qsc_model)
from hdair.constellation import build_square_qam
from hdair.errors import ConfigurationError


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([4, 16, 64, 256]), st.floats(-10, 40))
def test_rows_are_distributions(order, snr):
    m = hard_dmc_analytic(build_square_qam(order), snr)
    assert np.all(m.transition >= 0)
    assert np.allclose(m.transition.sum(axis=1), 1.0, atol=1e-12)
    assert 0 <= m.delta <= (order - 1) / order + 1e-12
    assert m.eps_levels.shape == (int(np.log2(order)),)
    assert m.eps_bar == pytest.approx(np.mean(m.eps_levels), abs=1e-15)


def test_qpsk_closed_form():
    # QPSK: each axis is an independent BPSK with amplitude 1/sqrt(2)
    snr = 7.0
    p = norm.sf(1 / np.sqrt(2) / noise_std(snr))
    m = hard_dmc_analytic(build_square_qam(4), snr)
    assert m.delta == pytest.approx(1 - (1 - p) ** 2, rel=1e-12)
    assert np.allclose(m.eps_levels, p, rtol=1e-12)


@pytest.mark.parametrize("order", [16, 64, 256])
def test_bit_errors_two_paths(order):
    c = build_square_qam(order)
    for snr in (5.0, 15.0, 25.0):
        assert np.allclose(hard_dmc_analytic(c, snr).eps_levels,
                           bit_error_levels_pam(c, snr), rtol=1e-10, atol=1e-300)


def test_infinite_snr_identity():
    m = hard_dmc_analytic(build_square_qam(16), np.inf)
    assert np.array_equal(m.transition, np.eye(16))
    assert m.delta == 0.0


def test_delta_monotone_in_snr():
    c = build_square_qam(64)
    d = [hard_dmc_analytic(c, s).delta for s in np.arange(0, 30, 2.0)]
    assert np.all(np.diff(d) < 0)


def test_detect_pam_ties_low():
    pam = build_square_qam(16).pam
    mid = 0.5 * (pam[0] + pam[1])
    assert detect_pam(np.array([mid, -10.0, 10.0]), pam).tolist() == [0, 0, 3]


def test_montecarlo_close_to_analytic():
    c = build_square_qam(16)
    n = 1 << 21
    mc = hard_dmc_montecarlo(c, 10.0, n, seed=3)
    an = hard_dmc_analytic(c, 10.0)
    assert np.max(np.abs(mc.transition - an.transition)) < 5 / np.sqrt(n / 16)


def test_montecarlo_worker_independent():
    c = build_square_qam(16)
    a = hard_dmc_montecarlo(c, 8.0, 3 * (1 << 20) + 17, seed=9, workers=1)
    b = hard_dmc_montecarlo(c, 8.0, 3 * (1 << 20) + 17, seed=9, workers=3)
    assert np.array_equal(a.transition, b.transition)


def test_mc_chunks_sum():
    sizes = mc_chunks(5 * (1 << 20) + 3)
    assert [i for i, _ in sizes] == list(range(6))
    assert sum(sz for _, sz in sizes) == 5 * (1 << 20) + 3


def test_montecarlo_rejects_zero():
    with pytest.raises(ConfigurationError):
        hard_dmc_montecarlo(build_square_qam(4), 5.0, 0)


@given(st.sampled_from([4, 16, 64, 256]), st.floats(0, 1))
def test_qsc_structure(q, frac):
    p = frac * (q - 1) / q
    m = qsc_model(q, p)
    P = m.transition
    assert np.allclose(np.diag(P), 1 - p)
    assert np.allclose(P.sum(axis=1), 1.0)
    assert m.delta == pytest.approx(p)


def test_qsc_rejects_out_of_range():
    from hdair.errors import DomainError
    with pytest.raises(DomainError):
        qsc_model(4, 0.8)
