"""Monte Carlo experiments over channel draws, designs and the rectenna model.

Randomness discipline: trial ``t`` of an experiment with seed ``s`` draws its
channel from ``np.random.default_rng([s, t])``, so results do not depend on
how trials are split across workers. Every strategy of an experiment is
evaluated on the same channel draw, which makes gain ratios paired. Symbols
and phase schedules come from a per-strategy stream keyed by the strategy
label, so adding a strategy to an experiment leaves the others untouched. Sweep
points reuse the experiment seed, so neighbouring points see the same
channel draws wherever the channel shape allows.
"""

from __future__ import annotations

import csv
import io
import json
import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import (
    ChannelFreqResponse,
    ChannelSpec,
    MobilityProfile,
    evolve_gauss_markov,
    jakes_correlation,
    jakes_epsilon,
    ls_estimate,
    pilot_observation,
    sample_channel,
)
from .diversity import td_baseband, td_phase_schedule, td_zdc
from .errors import DegenerateChannelError, DomainError
from .modulation import MODULATION_TAGS, ModulationScheme, sample_symbols
from .rectenna import RectennaParams, zdc_terms
from .waveform import DESIGN_TAGS, DesignMethod, design_waveform

__all__ = [
    "CSV_HEADER",
    "Strategy",
    "FrameConfig",
    "ExperimentSpec",
    "ZdcReport",
    "MobilityReport",
    "SweepPoint",
    "run_monte_carlo",
    "run_mobility",
    "sweep",
    "gain_ratio",
    "run_experiment",
    "rows_to_csv",
    "rows_to_json",
]

CSV_HEADER = (
    "experiment",
    "strategy",
    "channel",
    "N",
    "M",
    "beta",
    "l",
    "epsilon",
    "velocity_mps",
    "zdc_mean",
    "zdc_ci95",
    "trials",
    "seed",
)
SWEEP_AXES = ("N", "M", "beta", "l", "velocity", "epsilon")
TD_TAGS = ("TD_CW", "TD_MOD", "TD_MULTISINE")
MAX_REDRAWS = 100
Z95 = 1.959963984540054


@dataclass(frozen=True)
class Strategy:
    """A transmit strategy: a waveform design, a modulation, or transmit diversity.

    ``kind`` is a waveform tag (UP, SMF, ...), a modulation tag (CW, QAM16,
    FLASH, ...) or one of TD_CW, TD_MOD, TD_MULTISINE. ``scheme`` names the
    modulation carried by TD_MOD.
    """

    kind: str
    beta: float | None = None
    l: float | None = None
    scheme: str | None = None
    order: int | None = None

    def __post_init__(self):
        kind = self.kind.strip().upper().replace("-", "_")
        object.__setattr__(self, "kind", kind)
        if self.family == "waveform":
            self.design_method()
        elif self.family == "modulation":
            self.modulation()
        elif kind == "TD_MOD":
            if self.scheme is None:
                raise DomainError("TD_MOD needs a modulation scheme")
            self.modulation()

    @property
    def family(self) -> str:
        if self.kind in TD_TAGS:
            return "td"
        try:
            DesignMethod(self.kind, self.beta if self.beta is not None else 0.0)
            return "waveform"
        except DomainError:
            pass
        try:
            ModulationScheme(self.kind, order=self.order, l=self.l if self.l is not None else 1.0)
            return "modulation"
        except DomainError:
            raise DomainError(f"unknown strategy {self.kind!r}") from None

    def design_method(self) -> DesignMethod:
        return DesignMethod(self.kind, self.beta)

    def modulation(self) -> ModulationScheme:
        tag = self.scheme if self.kind == "TD_MOD" else self.kind
        return ModulationScheme(tag, order=self.order, l=self.l)

    @property
    def label(self) -> str:
        if self.family == "waveform":
            return self.design_method().label
        if self.family == "modulation":
            return self.modulation().label
        if self.kind == "TD_MOD":
            return f"TD_MOD({self.modulation().label})"
        return self.kind

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for key in ("beta", "l", "scheme", "order"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


@dataclass(frozen=True)
class FrameConfig:
    """Closed-loop frame: pilot, processing delay, then power transfer."""

    t_frame: float = 1.0
    t_pilot: float = 512e-6
    t_prev: float = 0.035
    noise_var: float = 0.0

    def __post_init__(self):
        if min(self.t_frame, self.t_pilot, self.t_prev, self.noise_var) < 0:
            raise DomainError("frame durations and noise variance must be >= 0")
        if not self.t_pilot + self.t_prev < self.t_frame:
            raise DomainError("t_pilot + t_prev must be shorter than t_frame")

    @property
    def duty_cycle(self) -> float:
        """Fraction of the frame spent sending the current-CSI waveform."""
        return (self.t_frame - self.t_pilot - self.t_prev) / self.t_frame

    @property
    def pilot_fraction(self) -> float:
        return self.t_pilot / self.t_frame

    @property
    def prev_fraction(self) -> float:
        return self.t_prev / self.t_frame


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one Monte Carlo experiment.

    ``epsilon`` set: the transmitter designs from the channel one Gauss-Markov
    step before the one it transmits over (``epsilon=1`` is current CSIT).
    ``mobility`` set: the experiment is a frame loop, see :func:`run_mobility`;
    ``trials`` then counts independent runs of ``frames`` frames each.
    """

    strategies: tuple[Strategy, ...]
    channel: ChannelSpec = field(default_factory=ChannelSpec)
    name: str = "experiment"
    power: float = 1.0
    params: RectennaParams = field(default_factory=RectennaParams)
    trials: int = 1000
    seed: int = 0
    epsilon: float | None = None
    mobility: MobilityProfile | None = None
    frame: FrameConfig = field(default_factory=FrameConfig)
    frames: int = 10
    symbols: int = 1024
    slots: int = 1024
    sweep_axis: str | None = None
    sweep_values: tuple[float, ...] = ()

    def __post_init__(self):
        strategies = tuple(Strategy(s) if isinstance(s, str) else s for s in self.strategies)
        if not strategies:
            raise DomainError("at least one strategy is required")
        object.__setattr__(self, "strategies", strategies)
        if self.trials < 1 or self.frames < 1 or self.symbols < 1 or self.slots < 1:
            raise DomainError("trials, frames, symbols and slots must be >= 1")
        if not self.power > 0:
            raise DomainError("power must be positive")
        if self.seed < 0:
            raise DomainError("seed must be a nonnegative integer")
        if self.epsilon is not None and not 0.0 <= self.epsilon <= 1.0:
            raise DomainError("epsilon must lie in [0, 1]")
        values = tuple(float(v) for v in self.sweep_values)
        object.__setattr__(self, "sweep_values", values)
        if self.sweep_axis is not None:
            if self.sweep_axis not in SWEEP_AXES:
                raise DomainError(f"sweep axis must be one of {SWEEP_AXES}")
            if not values:
                raise DomainError("sweep needs at least one value")
            if not all(math.isfinite(v) for v in values) or list(values) != sorted(values):
                raise DomainError("sweep values must be finite and sorted")
            if self.sweep_axis == "velocity" and self.mobility is None:
                raise DomainError("a velocity sweep needs a mobility profile")
        labels = [s.label for s in strategies]
        if len(set(labels)) != len(labels):
            raise DomainError("strategy labels must be unique")

    def replace(self, **changes) -> "ExperimentSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class ZdcReport:
    strategy: str
    zdc_mean: float
    zdc_ci95: float
    second_mean: float
    fourth_mean: float
    fourth_ci95: float
    trials: int
    seed: int
    redraws: int = 0
    values: np.ndarray = field(default=None, repr=False, compare=False)
    fourth_values: np.ndarray = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class MobilityReport:
    velocity: float
    t_frame: float
    epsilon: float
    correlation: float
    reports: dict
    series: dict
    duty_cycle: float
    pilot_fraction: float
    prev_fraction: float

    def gain(self, adaptive: str, baseline: str) -> tuple[float, float]:
        return gain_ratio(self.reports[adaptive], self.reports[baseline])


@dataclass(frozen=True)
class SweepPoint:
    value: float
    reports: dict
    epsilon: float | None = None
    velocity: float | None = None


def _mean_ci(values: np.ndarray) -> tuple[float, float]:
    n = values.size
    mean = math.fsum(values.tolist()) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum(((values - mean) ** 2).tolist()) / (n - 1)
    return mean, Z95 * math.sqrt(var / n)


def _make_report(label: str, second: np.ndarray, fourth: np.ndarray, seed: int, redraws: int) -> ZdcReport:
    total = second + fourth
    mean, ci = _mean_ci(total)
    fourth_mean, fourth_ci = _mean_ci(fourth)
    return ZdcReport(
        strategy=label,
        zdc_mean=mean,
        zdc_ci95=ci,
        second_mean=math.fsum(second.tolist()) / second.size,
        fourth_mean=fourth_mean,
        fourth_ci95=fourth_ci,
        trials=total.size,
        seed=seed,
        redraws=redraws,
        values=total,
        fourth_values=fourth,
    )


def gain_ratio(adaptive: ZdcReport, baseline: ZdcReport) -> tuple[float, float]:
    """Ratio of mean z_DC and its paired 95% half-width (delta method)."""
    a, b = adaptive.values, baseline.values
    if a.size != b.size:
        raise DomainError("gain ratio needs reports over the same trials")
    ratio = adaptive.zdc_mean / baseline.zdc_mean
    if a.size < 2:
        return ratio, 0.0
    resid = a - ratio * b
    return ratio, Z95 * float(np.std(resid, ddof=1)) / (baseline.zdc_mean * math.sqrt(a.size))


def _observe(h: ChannelFreqResponse, spec: ExperimentSpec, rng: np.random.Generator) -> ChannelFreqResponse:
    """Channel as known to the transmitter after LS estimation on unit pilots."""
    if spec.frame.noise_var == 0:
        return h
    pilot = np.ones(h.n_tones)
    received = pilot_observation(h, pilot, spec.frame.noise_var, rng)
    return ls_estimate(pilot, received, f0_hz=h.f0_hz, spacing_hz=h.spacing_hz)


def _evaluate(
    strategy: Strategy,
    spec: ExperimentSpec,
    known: ChannelFreqResponse,
    actual: ChannelFreqResponse,
    rng: np.random.Generator,
) -> tuple[float, float]:
    params, power = spec.params, spec.power
    if strategy.family == "waveform":
        method = strategy.design_method()
        n, m = actual.gains.shape
        w = design_waveform(method, known if method.needs_csit else None, n_tones=n, n_antennas=m, power=power)
        second, fourth = zdc_terms(np.sum(actual.gains * w.weights, axis=1), params)
        return float(second), float(fourth)
    if strategy.family == "modulation":
        symbols = sample_symbols(strategy.modulation(), spec.symbols, rng).symbols
        c = actual.gains[0, 0] * np.sqrt(2.0 * power) * symbols
        second, fourth = zdc_terms(c[:, None], params)
        return float(np.mean(second)), float(np.mean(fourth))
    schedule = td_phase_schedule(actual.n_antennas, spec.slots, rng)
    if strategy.kind == "TD_MULTISINE":
        signal = td_baseband("multisine", schedule, power, rng, n_tones=actual.n_tones)
        return td_zdc(signal, params, actual)
    narrowband = actual.with_gains(actual.gains[:1])
    if strategy.kind == "TD_CW":
        signal = td_baseband("cw", schedule, power, rng)
    else:
        signal = td_baseband("modulated", schedule, power, rng, scheme=strategy.modulation())
    return td_zdc(signal, params, narrowband)


def _strategy_rng(strategy: Strategy, *key: int) -> np.random.Generator:
    return np.random.default_rng([*key, zlib.crc32(strategy.label.encode())])


def _trial(spec: ExperimentSpec, index: int) -> tuple[list[tuple[float, float]], int]:
    rng = np.random.default_rng([spec.seed, index])
    for attempt in range(MAX_REDRAWS + 1):
        try:
            h = sample_channel(spec.channel, rng)
            known = _observe(h, spec, rng)
            actual = h
            if spec.epsilon is not None and spec.epsilon < 1.0:
                actual = evolve_gauss_markov(h, spec.epsilon, spec.channel, rng)
            return [
                _evaluate(s, spec, known, actual, _strategy_rng(s, spec.seed, index, attempt)) for s in spec.strategies
            ], attempt
        except DegenerateChannelError:
            continue
    raise DegenerateChannelError(f"trial {index}: no usable channel after {MAX_REDRAWS} redraws")


def _trial_block(spec: ExperimentSpec, start: int, stop: int):
    return [_trial(spec, i) for i in range(start, stop)]


def _blocks(n: int, workers: int) -> list[tuple[int, int]]:
    size = max(1, -(-n // (4 * workers)))
    return [(s, min(s + size, n)) for s in range(0, n, size)]


def run_monte_carlo(spec: ExperimentSpec, workers: int = 1) -> dict[str, ZdcReport]:
    """Mean z_DC of every strategy over ``spec.trials`` independent channel draws.

    Returns one report per strategy label, in strategy order.
    """
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(_trial_block, *zip(*[(spec, a, b) for a, b in _blocks(spec.trials, workers)]))
            results = [r for chunk in chunks for r in chunk]
    else:
        results = _trial_block(spec, 0, spec.trials)
    terms = np.array([r[0] for r in results])  # trials x strategies x 2
    redraws = sum(r[1] for r in results)
    return {
        s.label: _make_report(s.label, terms[:, i, 0], terms[:, i, 1], spec.seed, redraws)
        for i, s in enumerate(spec.strategies)
    }


def _mobility_run(spec: ExperimentSpec, run: int, epsilon: float) -> np.ndarray:
    """frames x strategies x 2 terms for one trajectory."""
    rng = np.random.default_rng([spec.seed, run])
    h = sample_channel(spec.channel, rng)
    out = np.empty((spec.frames, len(spec.strategies), 2))
    for k in range(spec.frames):
        frame_rng = np.random.default_rng([spec.seed, run, k + 1])
        known = _observe(h, spec, frame_rng)
        for attempt in range(MAX_REDRAWS + 1):
            nxt = evolve_gauss_markov(h, epsilon, spec.channel, frame_rng)
            try:
                out[k] = [
                    _evaluate(s, spec, known, nxt, _strategy_rng(s, spec.seed, run, k + 1, attempt))
                    for s in spec.strategies
                ]
                break
            except DegenerateChannelError:
                continue
        else:
            raise DegenerateChannelError(f"run {run}, frame {k}: no usable channel")
        h = nxt
    return out


def _mobility_block(spec: ExperimentSpec, epsilon: float, start: int, stop: int):
    return [_mobility_run(spec, r, epsilon) for r in range(start, stop)]


def run_mobility(
    spec: ExperimentSpec,
    frame: FrameConfig | None = None,
    profile: MobilityProfile | None = None,
    workers: int = 1,
) -> MobilityReport:
    """Delayed-CSIT frame loop under Jakes time correlation.

    In every frame the transmitter designs from its (optionally noisy) estimate
    of the previous frame's channel, the channel takes one Gauss-Markov step
    with epsilon = |J0(2 pi f_D T_frame)|, and z_DC is evaluated on the new
    channel. Reports hold one value per run (the run's frame average); the
    series is the across-run mean per frame.
    """
    frame = frame or spec.frame
    profile = profile or spec.mobility
    if profile is None:
        raise DomainError("run_mobility needs a mobility profile")
    spec = spec.replace(frame=frame, mobility=profile)
    timed = MobilityProfile(profile.velocity, profile.carrier_frequency, interval=frame.t_frame)
    epsilon = jakes_epsilon(timed)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            args = [(spec, epsilon, a, b) for a, b in _blocks(spec.trials, workers)]
            runs = [r for chunk in pool.map(_mobility_block, *zip(*args)) for r in chunk]
    else:
        runs = _mobility_block(spec, epsilon, 0, spec.trials)
    terms = np.array(runs)  # runs x frames x strategies x 2
    per_run = terms.mean(axis=1)
    reports, series = {}, {}
    for i, s in enumerate(spec.strategies):
        reports[s.label] = _make_report(s.label, per_run[:, i, 0], per_run[:, i, 1], spec.seed, 0)
        series[s.label] = terms[:, :, i, :].sum(axis=-1).mean(axis=0)
    return MobilityReport(
        velocity=profile.velocity,
        t_frame=frame.t_frame,
        epsilon=epsilon,
        correlation=jakes_correlation(timed),
        reports=reports,
        series=series,
        duty_cycle=frame.duty_cycle,
        pilot_fraction=frame.pilot_fraction,
        prev_fraction=frame.prev_fraction,
    )


def _at(spec: ExperimentSpec, axis: str, value: float) -> ExperimentSpec:
    if axis == "N":
        return spec.replace(channel=spec.channel.replace(n_tones=int(value)))
    if axis == "M":
        return spec.replace(channel=spec.channel.replace(n_antennas=int(value)))
    if axis in ("beta", "l"):
        if all(getattr(s, axis) is None for s in spec.strategies):
            raise DomainError(f"no strategy carries a {axis} to sweep")
        strategies = tuple(
            replace(s, **{axis: value}) if getattr(s, axis) is not None else s for s in spec.strategies
        )
        return spec.replace(strategies=strategies)
    if axis == "velocity":
        return spec.replace(mobility=replace(spec.mobility, velocity=value))
    return spec.replace(epsilon=value)


def sweep(spec: ExperimentSpec, workers: int = 1) -> list[SweepPoint]:
    """One experiment per sweep value, all sharing the experiment seed."""
    if spec.sweep_axis is None:
        raise DomainError("spec has no sweep axis")
    points = []
    for value in spec.sweep_values:
        point = _at(spec, spec.sweep_axis, value).replace(sweep_axis=None, sweep_values=())
        if point.mobility is not None:
            mob = run_mobility(point, workers=workers)
            points.append(SweepPoint(value, mob.reports, epsilon=mob.epsilon, velocity=mob.velocity))
        else:
            points.append(SweepPoint(value, run_monte_carlo(point, workers=workers), epsilon=point.epsilon))
    return points


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _rows(spec: ExperimentSpec, reports: dict, epsilon, velocity) -> list[dict]:
    rows = []
    for s in spec.strategies:
        rep = reports[s.label]
        rows.append(
            {
                "experiment": spec.name,
                "strategy": s.label,
                "channel": spec.channel.kind,
                "N": _fmt(spec.channel.n_tones),
                "M": _fmt(spec.channel.n_antennas),
                "beta": _fmt(s.beta),
                "l": _fmt(s.l),
                "epsilon": _fmt(epsilon),
                "velocity_mps": _fmt(velocity),
                "zdc_mean": _fmt(rep.zdc_mean),
                "zdc_ci95": _fmt(rep.zdc_ci95),
                "trials": _fmt(rep.trials),
                "seed": _fmt(rep.seed),
            }
        )
    return rows


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> list[dict]:
    """Run whatever ``spec`` describes and return CSV-ready rows."""
    if spec.sweep_axis is not None:
        rows = []
        for point in sweep(spec, workers=workers):
            at = _at(spec, spec.sweep_axis, point.value)
            rows += _rows(at, point.reports, point.epsilon, point.velocity)
        return rows
    if spec.mobility is not None:
        mob = run_mobility(spec, workers=workers)
        return _rows(spec, mob.reports, mob.epsilon, mob.velocity)
    return _rows(spec, run_monte_carlo(spec, workers=workers), spec.epsilon, None)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2)
