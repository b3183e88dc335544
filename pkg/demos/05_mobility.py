"""How user speed and frame length erode the value of a matched waveform."""

from wptsim import (
    ChannelSpec,
    ExperimentSpec,
    FrameConfig,
    MobilityProfile,
    Strategy,
    jakes_epsilon,
    run_mobility,
)

spec = ExperimentSpec(
    strategies=("UP", Strategy("SMF", beta=3.0)),
    channel=ChannelSpec("selective", n_tones=16, n_taps=16),
    trials=150,
    frames=8,
    seed=3,
)

for t_frame in (1.0, 0.2):
    frame = FrameConfig(t_frame=t_frame)
    print(f"frame {t_frame:g} s, duty cycle {frame.duty_cycle:.3f}")
    for v in (0.0, 0.01, 0.05, 0.5, 1.0):
        profile = MobilityProfile(v, interval=t_frame)
        rep = run_mobility(spec, frame=frame, profile=profile)
        gain, ci = rep.gain("SMF(beta=3)", "UP")
        print(f"  v={v:5.2f} m/s |eps|={jakes_epsilon(profile):.3f} SMF/UP gain {gain:5.2f} +/- {ci:.2f}")
