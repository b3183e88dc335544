"""Signal strategies for radiative wireless power transfer.

Multisine waveform and beamforming designs, energy modulation, phase-sweeping
transmit diversity, the nonlinear rectenna metric z_DC, fading channels with
mobility, closed-form scaling laws, and a seeded Monte Carlo harness.
"""

__version__ = "0.1.0"

from .channel import (
    ChannelFreqResponse,
    ChannelSpec,
    MobilityProfile,
    evolve_gauss_markov,
    jakes_correlation,
    jakes_epsilon,
    ls_estimate,
    sample_channel,
)
from .diversity import (
    PhaseSchedule,
    td_baseband,
    td_gain_theoretical,
    td_multisine_gain,
    td_phase_schedule,
    td_zdc,
)
from .errors import ConfigError, DegenerateChannelError, DomainError, MomentInconsistencyError, WptError
from .harness import (
    ExperimentSpec,
    FrameConfig,
    Strategy,
    ZdcReport,
    gain_ratio,
    run_experiment,
    run_mobility,
    run_monte_carlo,
    sweep,
)
from .modulation import ModulationScheme, SymbolStream, empirical_moments, sample_symbols, theoretical_m4
from .rectenna import (
    RectennaParams,
    SampledSignal,
    ToneVector,
    synthesize,
    taylor_coefficients,
    zdc_modulated,
    zdc_multisine_freq,
    zdc_terms,
    zdc_time_domain,
)
from .scaling import ScalingCase, scaling_modulation, scaling_td, scaling_waveform
from .waveform import DesignMethod, WaveformWeights, design_waveform, papr, received_tones
