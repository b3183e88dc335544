"""Waveform designs on one frequency-selective channel draw, then averaged over many."""

import numpy as np

from wptsim import (
    ChannelSpec,
    DesignMethod,
    ExperimentSpec,
    RectennaParams,
    Strategy,
    design_waveform,
    received_tones,
    run_monte_carlo,
    sample_channel,
    zdc_multisine_freq,
)
from wptsim.waveform import papr

params = RectennaParams()
channel = ChannelSpec("selective", n_tones=16, n_taps=8)
h = sample_channel(channel, np.random.default_rng(4))

methods = ["UP", "ASS", "UPMF", "MF", "MAXPAPR", DesignMethod("SMF", 3.0)]
print("single draw")
for method in methods:
    w = design_waveform(method, h, power=1.0)
    tones = received_tones(w, h)
    print(f"  {w.method.label:12s} z_DC={zdc_multisine_freq(tones, params):9.1f} PAPR={papr(tones):6.2f}")

spec = ExperimentSpec(
    strategies=("UP", "ASS", "UPMF", "MF", "MAXPAPR", Strategy("SMF", beta=3.0)),
    channel=channel,
    trials=500,
    seed=1,
)
print("mean over 500 draws")
for label, rep in run_monte_carlo(spec).items():
    print(f"  {label:12s} {rep.zdc_mean:9.1f} +/- {rep.zdc_ci95:.1f}")
