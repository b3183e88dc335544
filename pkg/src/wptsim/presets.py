"""Built-in experiments mirroring the measurement campaigns.

All presets use normalized transmit power P = 1 and the default rectenna
coefficients; they reproduce relative trends, not absolute power levels.
"""

from __future__ import annotations

from .channel import ChannelSpec, MobilityProfile
from .harness import ExperimentSpec, FrameConfig, Strategy

__all__ = ["PRESETS", "preset", "preset_names"]

N_SWEEP = (1, 2, 4, 8, 16)
SISO_DESIGNS = (
    Strategy("UP"),
    Strategy("ASS"),
    Strategy("MF"),
    Strategy("MAXPAPR"),
    Strategy("SMF", beta=3.0),
)
MODULATIONS = (
    Strategy("CW"),
    Strategy("BPSK"),
    Strategy("QPSK"),
    Strategy("QAM16"),
    Strategy("CSCG"),
    Strategy("REALGAUSSIAN"),
)
VELOCITIES = (0.01, 0.05, 0.5, 1.0)


def _waveforms(name: str, channel: ChannelSpec) -> ExperimentSpec:
    return ExperimentSpec(
        name=name, strategies=SISO_DESIGNS, channel=channel, trials=1000, sweep_axis="N", sweep_values=N_SWEEP
    )


def _fig6a():
    return [_waveforms("fig6a", ChannelSpec("flat"))]


def _fig6b():
    return [_waveforms("fig6b", ChannelSpec("selective", n_taps=8))]


def _fig6c():
    # Same delay spread over a quarter of the bandwidth: a quarter of the taps.
    return [_waveforms("fig6c", ChannelSpec("selective", n_taps=2, bandwidth=2.5e6))]


def _fig7():
    return [
        _waveforms("fig7a", ChannelSpec("flat")),
        _waveforms("fig7b", ChannelSpec("selective", n_taps=8)),
    ]


def _fig8():
    specs = []
    for t_frame, tag in ((1.0, "1s"), (0.2, "200ms")):
        specs.append(
            ExperimentSpec(
                name=f"fig8-{tag}",
                strategies=(Strategy("UP"), Strategy("SMF", beta=3.0)),
                # L = N keeps tones uncorrelated, so a fully stale design falls back to UP.
                channel=ChannelSpec("selective", n_tones=16, n_taps=16),
                trials=400,
                frames=10,
                mobility=MobilityProfile(VELOCITIES[0]),
                frame=FrameConfig(t_frame=t_frame),
                sweep_axis="velocity",
                sweep_values=VELOCITIES,
            )
        )
    return specs


def _fig9():
    specs = []
    for kind, taps in (("flat", 8), ("selective", 8)):
        tag = "a" if kind == "flat" else "b"
        specs.append(
            ExperimentSpec(
                name=f"fig9{tag}-1tx",
                strategies=(Strategy("UP"), Strategy("UPMF"), Strategy("SMF", beta=3.0)),
                channel=ChannelSpec(kind, n_antennas=1, n_taps=taps),
                trials=1000,
                sweep_axis="N",
                sweep_values=N_SWEEP,
            )
        )
        specs.append(
            ExperimentSpec(
                name=f"fig9{tag}-2tx",
                strategies=(Strategy("MISO_UPMF"), Strategy("MISO_SMF", beta=3.0)),
                channel=ChannelSpec(kind, n_antennas=2, n_taps=taps),
                trials=1000,
                sweep_axis="N",
                sweep_values=N_SWEEP,
            )
        )
    return specs


def _fig10():
    flash = tuple(Strategy("FLASH", l=float(l)) for l in (2, 3, 4, 5))
    return [
        ExperimentSpec(
            name="fig10",
            strategies=MODULATIONS + flash,
            channel=ChannelSpec("unit", n_tones=1),
            trials=100,
            symbols=4096,
        )
    ]


def _fig12():
    # Fixed unit gain per antenna: averaged over Rayleigh draws the phase sweep gains nothing.
    channel = ChannelSpec("unit", n_tones=8)
    return [
        ExperimentSpec(
            name="fig12-1tx",
            strategies=(Strategy("CW"), Strategy("CSCG"), Strategy("UP")),
            channel=channel,
            trials=1000,
            symbols=1024,
        ),
        ExperimentSpec(
            name="fig12-td",
            strategies=(Strategy("TD_CW"), Strategy("TD_MOD", scheme="CSCG"), Strategy("TD_MULTISINE")),
            channel=channel.replace(n_antennas=2),
            trials=1000,
            slots=1024,
        ),
    ]


def _fig13():
    flash = tuple(Strategy("FLASH", l=float(l)) for l in (2, 3, 4, 5))
    return [
        ExperimentSpec(
            name="fig13",
            strategies=MODULATIONS + flash,
            channel=ChannelSpec("unit", n_tones=1),
            trials=300,
            symbols=4096,
        )
    ]


PRESETS = {
    "fig6a": (_fig6a, "SISO waveforms vs N, frequency-flat channel"),
    "fig6b": (_fig6b, "SISO waveforms vs N, frequency-selective channel, 10 MHz"),
    "fig6c": (_fig6c, "SISO waveforms vs N, frequency-selective channel, 2.5 MHz"),
    "fig7": (_fig7, "voltage-doubler campaign (same z_DC model), FF and FS"),
    "fig8": (_fig8, "UP vs SMF(beta=3) against velocity, 1 s and 200 ms frames"),
    "fig9": (_fig9, "one vs two transmit antennas, UPMF and SMF, FF and FS"),
    "fig10": (_fig10, "modulation schemes fed by cable, flash l=2..5"),
    "fig12": (_fig12, "transmit diversity with CW, CSCG and 8-tone multisine"),
    "fig13": (_fig13, "modulation comparison at the circuit-simulation trial count"),
}


def preset_names() -> list[str]:
    return list(PRESETS)


def preset(name: str) -> list[ExperimentSpec]:
    try:
        factory, _ = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return factory()
