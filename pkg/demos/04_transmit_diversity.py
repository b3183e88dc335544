"""Phase sweeping across M antennas without any channel knowledge."""

import numpy as np

from wptsim import (
    ModulationScheme,
    RectennaParams,
    td_baseband,
    td_gain_theoretical,
    td_multisine_gain,
    td_phase_schedule,
    td_zdc,
    zdc_terms,
)

params = RectennaParams()
_, cw = zdc_terms(np.array([np.sqrt(2.0)]), params)
rng = np.random.default_rng(0)

for m in (1, 2, 4, 8, 16):
    schedule = td_phase_schedule(m, 50_000, rng)
    _, plain = td_zdc(td_baseband("cw", schedule), params)
    _, mod = td_zdc(td_baseband("modulated", schedule, 1.0, rng, scheme=ModulationScheme("CSCG")), params)
    print(
        f"M={m:2d} fourth-order gain over CW: sweep {plain / float(cw):.3f} (theory {td_gain_theoretical(m):.3f}), "
        f"sweep + CSCG {mod / float(cw):.3f}"
    )

for n in (2, 4, 8, 16):
    print(f"multisine with N={n:2d}: {td_multisine_gain(n, exact=True):.3f} exact, {td_multisine_gain(n):.3f} approx")
