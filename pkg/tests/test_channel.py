import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bessel_j0_series
from wptsim import (
    ChannelFreqResponse,
    ChannelSpec,
    DomainError,
    MobilityProfile,
    evolve_gauss_markov,
    jakes_correlation,
    jakes_epsilon,
    ls_estimate,
    sample_channel,
)
from wptsim.channel import EPSILON_CEILING, pilot_observation


def test_flat_is_constant_across_tones(rng):
    h = sample_channel(ChannelSpec("flat", n_tones=8), rng)
    assert np.all(h.gains == h.gains[0])


def test_single_tap_selective_is_flat_in_magnitude(rng):
    h = sample_channel(ChannelSpec("selective", n_tones=16, n_taps=1), rng)
    assert np.allclose(np.abs(h.gains), np.abs(h.gains[0, 0]), rtol=1e-12)


def test_selective_unit_power():
    rng = np.random.default_rng(1)
    spec = ChannelSpec("selective", n_tones=64, n_taps=8)
    power = np.mean([np.abs(sample_channel(spec, rng).gains) ** 2 for _ in range(10_000)], axis=0)
    assert abs(power.mean() - 1) <= 0.03
    # each tone alone has a 1% standard error at 10^4 draws
    assert np.all(np.abs(power - 1) <= 0.05)


def test_selective_decorrelation_with_l_equal_n():
    rng = np.random.default_rng(2)
    spec = ChannelSpec("selective", n_tones=8, n_taps=8)
    h = np.array([sample_channel(spec, rng).gains[:, 0] for _ in range(10_000)])
    corr = (h.conj().T @ h) / len(h)
    off = corr[~np.eye(8, dtype=bool)]
    assert np.max(np.abs(off)) <= 0.03


def test_unit_channel():
    h = sample_channel(ChannelSpec("unit", n_tones=4, n_antennas=3))
    assert np.array_equal(h.gains, np.ones((4, 3)))


def test_spec_validation():
    with pytest.raises(DomainError):
        ChannelSpec("rician")
    with pytest.raises(DomainError):
        ChannelSpec("flat", n_tones=0)
    with pytest.raises(DomainError):
        ChannelSpec("selective", n_taps=0)


def test_default_grid_centered():
    spec = ChannelSpec("selective", n_tones=16)
    f0, spacing = spec.grid
    assert spacing == pytest.approx(625e3)
    assert f0 + 7.5 * spacing == pytest.approx(2.45e9)


def test_json_round_trip(rng):
    h = sample_channel(ChannelSpec("selective", n_tones=4, n_antennas=2), rng)
    back = ChannelFreqResponse.from_json(h.to_json())
    assert np.array_equal(back.gains, h.gains)
    assert (back.kind, back.f0_hz, back.spacing_hz) == (h.kind, h.f0_hz, h.spacing_hz)


def test_response_rejects_nonfinite():
    with pytest.raises(DomainError):
        ChannelFreqResponse(np.array([[np.nan]]), "flat")


def test_jakes_zero_velocity():
    assert jakes_epsilon(MobilityProfile(0.0)) == EPSILON_CEILING


def test_jakes_pedestrian_spot():
    eps = jakes_epsilon(MobilityProfile(0.01, 2.45e9, 1.0))
    x = 2 * np.pi * 0.01 * 2.45e9 / 3e8
    assert x == pytest.approx(0.5131, abs=1e-4)
    assert eps == pytest.approx(0.9353, abs=1e-3)
    assert eps == pytest.approx(bessel_j0_series(x), abs=1e-10)


def test_jakes_walking_frames_against_oracle():
    # |J0(10.26)| is 0.249 and |J0(51.31)| is 0.108: the shorter frame stays more correlated.
    short = jakes_epsilon(MobilityProfile(1.0, 2.45e9, 0.2))
    long = jakes_epsilon(MobilityProfile(1.0, 2.45e9, 1.0))
    assert short == pytest.approx(abs(bessel_j0_series(2 * np.pi * 2.45e9 / 3e8 * 0.2)), abs=1e-10)
    assert long == pytest.approx(abs(bessel_j0_series(2 * np.pi * 2.45e9 / 3e8)), abs=1e-10)
    assert short > long


def test_jakes_correlation_keeps_sign():
    p = MobilityProfile(1.0, 2.45e9, 0.2)
    assert jakes_correlation(p) < 0
    assert jakes_epsilon(p) == pytest.approx(-jakes_correlation(p))


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 100))
def test_j0_matches_series_oracle(x):
    p = MobilityProfile(velocity=x * 3e8 / (2 * np.pi * 2.45e9), carrier_frequency=2.45e9, interval=1.0)
    assert jakes_correlation(p) == pytest.approx(bessel_j0_series(2 * np.pi * p.doppler), abs=1e-10)


def test_jakes_deterministic():
    p = MobilityProfile(0.37, 2.45e9, 0.2)
    assert jakes_epsilon(p) == jakes_epsilon(p)


def test_mobility_validation():
    with pytest.raises(DomainError):
        MobilityProfile(-1.0)
    with pytest.raises(DomainError):
        MobilityProfile(1.0, interval=0.0)


def test_gauss_markov_limits(rng):
    spec = ChannelSpec("selective", n_tones=8)
    h = sample_channel(spec, rng)
    near = evolve_gauss_markov(h, EPSILON_CEILING, spec, rng)
    assert np.allclose(near.gains, h.gains, atol=1e-4)
    r1, r2 = np.random.default_rng(5), np.random.default_rng(5)
    fresh = evolve_gauss_markov(h, 0.0, spec, r1)
    assert np.array_equal(fresh.gains, sample_channel(spec, r2).gains)


@pytest.mark.parametrize("eps", [-0.1, 1.0, 1.5])
def test_gauss_markov_domain(eps, rng):
    spec = ChannelSpec("flat")
    with pytest.raises(DomainError):
        evolve_gauss_markov(sample_channel(spec, rng), eps, spec, rng)


def test_gauss_markov_statistics():
    rng = np.random.default_rng(7)
    spec = ChannelSpec("flat", n_tones=1)
    h = sample_channel(spec, rng)
    path = np.empty(100_000, dtype=complex)
    for k in range(path.size):
        h = evolve_gauss_markov(h, 0.9, spec, rng)
        path[k] = h.gains[0, 0]
    var = np.mean(np.abs(path) ** 2)
    corr = np.real(np.mean(path[1:] * np.conj(path[:-1]))) / var
    assert var == pytest.approx(1.0, abs=0.02)
    assert corr == pytest.approx(0.9, abs=0.01)


def test_flat_coherence_survives_evolution(rng):
    spec = ChannelSpec("flat", n_tones=8, n_antennas=2)
    h = sample_channel(spec, rng)
    for _ in range(20):
        h = evolve_gauss_markov(h, 0.5, spec, rng)
        assert np.all(h.gains == h.gains[0])


def test_unit_channel_never_evolves(rng):
    spec = ChannelSpec("unit", n_tones=4)
    h = sample_channel(spec)
    assert evolve_gauss_markov(h, 0.3, spec, rng) is h


def test_ls_noiseless_exact(rng):
    h = sample_channel(ChannelSpec("selective", n_tones=16, n_antennas=2), rng)
    pilot = np.exp(1j * np.linspace(0, 3, 16))
    est = ls_estimate(pilot, pilot_observation(h, pilot, 0.0, rng))
    assert np.allclose(est.gains, h.gains, rtol=1e-14)


def test_ls_noise_variance():
    rng = np.random.default_rng(11)
    spec = ChannelSpec("selective", n_tones=16)
    sigma2 = 0.1
    errs = []
    for _ in range(100_000 // 16):
        h = sample_channel(spec, rng)
        est = ls_estimate(np.ones(16), pilot_observation(h, np.ones(16), sigma2, rng))
        errs.append(np.mean(np.abs(est.gains - h.gains) ** 2))
    assert np.mean(errs) == pytest.approx(sigma2, rel=0.03)


def test_ls_error_scales_inversely_with_pilot(rng):
    h = sample_channel(ChannelSpec("flat", n_tones=4), rng)
    noise = np.array([0.1 + 0.2j, -0.3j, 0.05, 0.4])[:, None]
    e1 = ls_estimate(np.ones(4), h.gains + noise).gains - h.gains
    e3 = ls_estimate(3 * np.ones(4), 3 * h.gains + noise).gains - h.gains
    assert np.allclose(e3, e1 / 3, rtol=1e-12)


def test_ls_zero_pilot():
    with pytest.raises(DomainError):
        ls_estimate(np.array([1, 0, 1]), np.ones(3))
