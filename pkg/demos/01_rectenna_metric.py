"""The rectenna metric z_DC: frequency-domain formula against a sampled period."""

import numpy as np

from wptsim import RectennaParams, ToneVector, synthesize, zdc_multisine_freq, zdc_terms, zdc_time_domain
from wptsim.waveform import papr

params = RectennaParams()
rng = np.random.default_rng(0)

for n in (1, 2, 4, 8, 16):
    # same total power 1/2 per vector, once in phase and once with random phases
    amp = np.full(n, 1 / np.sqrt(n))
    for label, coeffs in (("in phase", amp), ("random phase", amp * np.exp(2j * np.pi * rng.random(n)))):
        tones = ToneVector(coeffs, tone_spacing=1e5)
        freq = zdc_multisine_freq(tones, params)
        time = zdc_time_domain(synthesize(tones), params)
        second, fourth = zdc_terms(coeffs, params)
        print(
            f"N={n:2d} {label:12s} z_DC={freq:9.3f} (sampled {time:9.3f}) "
            f"second-order term {float(second):.3f} PAPR {papr(tones):5.2f}"
        )
