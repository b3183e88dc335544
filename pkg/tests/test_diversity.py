import numpy as np
import pytest
from scipy import stats

from wptsim import (
    ChannelFreqResponse,
    DomainError,
    ModulationScheme,
    PhaseSchedule,
    RectennaParams,
    td_baseband,
    td_gain_theoretical,
    td_multisine_gain,
    td_phase_schedule,
    td_zdc,
    zdc_terms,
)
from wptsim.diversity import td_received


def test_schedule_shape_and_range(rng):
    s = td_phase_schedule(3, 1000, rng)
    assert s.phases.shape == (1000, 3)
    assert np.all((s.phases >= 0) & (s.phases < 2 * np.pi))


def test_schedule_deterministic():
    a = td_phase_schedule(2, 100, np.random.default_rng(8)).phases
    b = td_phase_schedule(2, 100, np.random.default_rng(8)).phases
    assert np.array_equal(a, b)


def test_schedule_phase_difference_uniform():
    s = td_phase_schedule(2, 100_000, np.random.default_rng(13)).phases
    diff = np.mod(s[:, 1] - s[:, 0], 2 * np.pi)
    assert stats.kstest(diff, "uniform", args=(0, 2 * np.pi)).statistic <= 0.01


def test_schedule_validation(rng):
    with pytest.raises(DomainError):
        td_phase_schedule(0, 10, rng)
    with pytest.raises(DomainError):
        PhaseSchedule(np.full((4, 2), 7.0))


def test_single_antenna_no_fluctuation(rng):
    params = RectennaParams()
    sig = td_baseband("cw", td_phase_schedule(1, 500, rng), 1.0)
    _, fourth = td_zdc(sig, params)
    _, cw = zdc_terms(np.array([np.sqrt(2.0)]), params)
    assert fourth == pytest.approx(float(cw), rel=1e-12)


def test_cw_amplitudes(rng):
    sig = td_baseband("cw", td_phase_schedule(2, 100, rng), 0.5)
    assert np.allclose(np.abs(sig.weights), np.sqrt(0.5), rtol=1e-15)


def test_modulated_shares_symbol(rng):
    sched = td_phase_schedule(2, 200, rng)
    sig = td_baseband("modulated", sched, 1.0, rng, scheme=ModulationScheme("CSCG"))
    derotated = sig.weights[:, 0, :] * np.exp(-1j * sched.phases)
    assert np.allclose(derotated[:, 0], derotated[:, 1], rtol=1e-12)


def test_multisine_amplitudes(rng):
    sig = td_baseband("multisine", td_phase_schedule(2, 50, rng), 1.0, n_tones=8)
    assert sig.weights.shape == (50, 8, 2)
    assert np.allclose(np.abs(sig.weights), np.sqrt(2 / 16), rtol=1e-15)


@pytest.mark.parametrize("kind,extra", [("cw", {}), ("multisine", {"n_tones": 5})])
@pytest.mark.parametrize("m", [1, 2, 4])
def test_power_conservation_exact(kind, extra, m, rng):
    sig = td_baseband(kind, td_phase_schedule(m, 300, rng), 0.8, **extra)
    assert np.allclose(sig.slot_power(), 0.8, rtol=1e-12)


def test_power_conservation_constant_modulus(rng):
    sig = td_baseband("modulated", td_phase_schedule(3, 300, rng), 0.8, rng, scheme=ModulationScheme.psk(8))
    assert np.allclose(sig.slot_power(), 0.8, rtol=1e-12)


def test_power_conservation_random_symbols_in_mean():
    rng = np.random.default_rng(17)
    sig = td_baseband("modulated", td_phase_schedule(2, 200_000, rng), 0.8, rng, scheme=ModulationScheme("CSCG"))
    assert sig.slot_power().mean() == pytest.approx(0.8, rel=0.01)


def test_baseband_errors(rng):
    sched = td_phase_schedule(2, 10, rng)
    with pytest.raises(DomainError):
        td_baseband("pulse", sched)
    with pytest.raises(DomainError):
        td_baseband("modulated", sched, 1.0, rng)
    with pytest.raises(DomainError):
        td_baseband("multisine", sched)


def test_received_with_channel(rng):
    sig = td_baseband("multisine", td_phase_schedule(2, 20, rng), 1.0, n_tones=3)
    h = ChannelFreqResponse(np.array([[1, 2], [0.5j, 1], [1, -1]], dtype=complex), "selective")
    expected = np.einsum("snm,nm->sn", sig.weights, h.gains)
    assert np.allclose(td_received(sig, h), expected)
    with pytest.raises(DomainError):
        td_received(sig, ChannelFreqResponse(np.ones((2, 2)), "unit"))


def test_gain_formula():
    assert td_gain_theoretical(1) == 1.0
    assert td_gain_theoretical(2) == 1.5
    assert abs(td_gain_theoretical(10**6) - 2) <= 1e-5
    with pytest.raises(DomainError):
        td_gain_theoretical(0)


@pytest.mark.parametrize("n", [1, 2, 3, 8, 16, 64])
def test_multisine_gain_exact_form(n):
    assert td_multisine_gain(n, exact=True) == pytest.approx((2 * n * n + 1) / (3 * n), rel=1e-12)
    assert td_multisine_gain(n) == pytest.approx(2 * n / 3)


def test_multisine_gain_asymptote():
    n = 1000
    assert td_multisine_gain(n, exact=True) / td_multisine_gain(n) == pytest.approx(1.0, abs=1e-5)


def test_td_cw_monte_carlo_m3():
    rng = np.random.default_rng(19)
    params = RectennaParams()
    _, fourth = td_zdc(td_baseband("cw", td_phase_schedule(3, 100_000, rng), 1.0), params)
    _, cw = zdc_terms(np.array([np.sqrt(2.0)]), params)
    assert fourth / cw == pytest.approx(td_gain_theoretical(3), rel=0.02)
