"""Fourth moment of common symbol alphabets and what it does to harvested DC."""

import numpy as np

from wptsim import ModulationScheme, RectennaParams, empirical_moments, sample_symbols, scaling_modulation, theoretical_m4

params = RectennaParams()
schemes = [ModulationScheme(t) for t in ("CW", "BPSK", "QPSK", "16QAM", "CSCG", "RealGaussian")]
schemes += [ModulationScheme.flash(l) for l in (2, 3, 4)]
cw = scaling_modulation(ModulationScheme("CW"), 0.01, params)

for i, scheme in enumerate(schemes):
    _, m4 = empirical_moments(sample_symbols(scheme, 200_000, np.random.default_rng(i)))
    z = scaling_modulation(scheme, 0.01, params)
    print(f"{scheme.label:14s} E|m|^4={theoretical_m4(scheme):7.3f} (sampled {m4:7.3f}) z_DC={z:.4f} ({z / cw:4.2f}x CW)")
