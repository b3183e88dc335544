"""Nonlinear rectenna metric z_DC.

The harvested DC power is tracked through the truncated diode expansion

    z_DC = k2 * R_ant * E[y(t)^2] + k4 * R_ant^2 * E[y(t)^4]

where ``y(t)`` is the real received RF signal. Three evaluation routes are
provided:

* ``zdc_multisine_freq``: exact DC terms of a deterministic multisine from its
  complex tone coefficients.
* ``zdc_time_domain``: time averages over a sampled waveform (the oracle).
* ``zdc_modulated``: statistical moments of a normalized modulation stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, MomentInconsistencyError

__all__ = [
    "RectennaParams",
    "ToneVector",
    "SampledSignal",
    "taylor_coefficients",
    "zdc_terms",
    "zdc_multisine_freq",
    "zdc_time_domain",
    "zdc_modulated",
    "synthesize",
]

DEFAULT_K2 = 0.0034
DEFAULT_K4 = 0.3829
DEFAULT_R_ANT = 50.0


def taylor_coefficients(i_s: float, n_ideality: float, v_t: float) -> tuple[float, float]:
    """Second and fourth order diode Taylor coefficients.

    k_i = i_s / (i! (n v_t)^i) for i = 2, 4.
    """
    if not (i_s > 0 and n_ideality > 0 and v_t > 0):
        raise DomainError("i_s, n_ideality and v_t must all be positive")
    nvt = n_ideality * v_t
    return i_s / (2.0 * nvt**2), i_s / (24.0 * nvt**4)


@dataclass(frozen=True)
class RectennaParams:
    """Diode expansion coefficients and antenna resistance.

    When the diode parameters ``(i_s, n_ideality, v_t)`` are given, ``k2`` and
    ``k4`` must agree with them; use :meth:`from_diode` to derive them.
    """

    k2: float = DEFAULT_K2
    k4: float = DEFAULT_K4
    r_ant: float = DEFAULT_R_ANT
    i_s: float | None = None
    n_ideality: float | None = None
    v_t: float | None = None

    def __post_init__(self):
        if not (self.k2 > 0 and self.k4 > 0 and self.r_ant > 0):
            raise DomainError("k2, k4 and r_ant must be positive")
        diode = (self.i_s, self.n_ideality, self.v_t)
        if any(v is not None for v in diode):
            if any(v is None for v in diode):
                raise DomainError("i_s, n_ideality and v_t must be given together")
            k2, k4 = taylor_coefficients(*diode)
            if not (math.isclose(self.k2, k2, rel_tol=1e-12) and math.isclose(self.k4, k4, rel_tol=1e-12)):
                raise DomainError("k2/k4 disagree with the supplied diode parameters")

    @classmethod
    def from_diode(cls, i_s: float, n_ideality: float, v_t: float, r_ant: float = DEFAULT_R_ANT) -> "RectennaParams":
        k2, k4 = taylor_coefficients(i_s, n_ideality, v_t)
        return cls(k2=k2, k4=k4, r_ant=r_ant, i_s=i_s, n_ideality=n_ideality, v_t=v_t)

    @property
    def second_order_gain(self) -> float:
        """k2 * R_ant, the weight on E[y^2]."""
        return self.k2 * self.r_ant

    @property
    def fourth_order_gain(self) -> float:
        """k4 * R_ant^2, the weight on E[y^4]."""
        return self.k4 * self.r_ant**2

    def to_dict(self) -> dict:
        return {"k2": self.k2, "k4": self.k4, "r_ant": self.r_ant}


@dataclass(frozen=True)
class ToneVector:
    """Received complex coefficient per tone of a uniformly spaced multisine.

    Tone ``n`` sits at ``base_frequency + n * tone_spacing``. If
    ``base_frequency`` is omitted it defaults to ``N * tone_spacing``, which
    keeps every intermodulation product of order four away from DC except the
    ones the frequency-domain formula accounts for.
    """

    coefficients: np.ndarray
    tone_spacing: float = 1.0
    base_frequency: float | None = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise DomainError("tone vector must be a nonempty 1-D sequence")
        if not self.tone_spacing > 0:
            raise DomainError("tone_spacing must be positive")
        object.__setattr__(self, "coefficients", c)
        if self.base_frequency is None:
            object.__setattr__(self, "base_frequency", float(c.size * self.tone_spacing))
        elif self.base_frequency < 0:
            raise DomainError("base_frequency must be nonnegative")

    def __len__(self) -> int:
        return self.coefficients.size

    @property
    def frequencies(self) -> np.ndarray:
        return self.base_frequency + self.tone_spacing * np.arange(len(self))

    def scaled(self, alpha: complex) -> "ToneVector":
        return ToneVector(self.coefficients * alpha, self.tone_spacing, self.base_frequency)


@dataclass(frozen=True)
class SampledSignal:
    """Real samples of ``y(t)`` covering an integer number of periods."""

    samples: np.ndarray
    sample_rate: float
    max_frequency: float | None = field(default=None, compare=False)

    def __post_init__(self):
        y = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", y)
        if not self.sample_rate > 0:
            raise DomainError("sample_rate must be positive")
        if self.max_frequency is not None and self.sample_rate < 8 * self.max_frequency:
            raise DomainError("sample_rate must be at least 8x the highest tone frequency")

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def _self_convolution(c: np.ndarray) -> np.ndarray:
    """a_k = sum_{n1+n2=k} c_n1 c_n2 along the last axis."""
    n = c.shape[-1]
    out = np.zeros(c.shape[:-1] + (2 * n - 1,), dtype=complex)
    for i in range(n):
        out[..., i : i + n] += c[..., i : i + 1] * c
    return out


def zdc_terms(coefficients, params: RectennaParams) -> tuple[np.ndarray, np.ndarray]:
    """Second- and fourth-order contributions to z_DC, batched.

    ``coefficients`` has tones on the last axis; leading axes are independent
    signals. The fourth-order DC content of y(t)^4 is
    (3/8) * sum over n1+n2=n3+n4 of c_n1 c_n2 conj(c_n3 c_n4), which equals
    (3/8) * ||c * c||^2 with ``*`` the linear self-convolution.
    """
    c = np.asarray(coefficients, dtype=complex)
    if c.shape[-1] == 0:
        raise DomainError("empty tone vector")
    second = 0.5 * np.sum(np.abs(c) ** 2, axis=-1)
    if c.shape[-1] == 1:
        fourth = 0.375 * np.abs(c[..., 0]) ** 4
    else:
        fourth = 0.375 * np.sum(np.abs(_self_convolution(c)) ** 2, axis=-1)
    return params.second_order_gain * second, params.fourth_order_gain * fourth


def zdc_multisine_freq(tones: ToneVector, params: RectennaParams) -> float:
    """z_DC of a deterministic multisine from its tone coefficients."""
    second, fourth = zdc_terms(tones.coefficients, params)
    return float(second + fourth)


def zdc_time_domain(signal: SampledSignal, params: RectennaParams) -> float:
    """z_DC from time averages of a sampled waveform."""
    y = signal.samples
    if y.size == 0:
        raise DomainError("empty sample buffer")
    y2 = y * y
    return float(params.second_order_gain * np.mean(y2) + params.fourth_order_gain * np.mean(y2 * y2))


def zdc_modulated(m2: float, m4: float, p_avg: float, params: RectennaParams) -> float:
    """z_DC of a narrowband carrier modulated by symbols with moments (m2, m4).

    The carrier amplitude is sqrt(2 P) |m|, so E[y^2] = m2 P and
    E[y^4] = (3/2) m4 P^2.
    """
    if not p_avg > 0:
        raise DomainError("p_avg must be positive")
    if m2 < 0 or m4 < m2 * m2 * (1.0 - 1e-12):
        raise MomentInconsistencyError(f"need m4 >= m2^2, got m2={m2!r}, m4={m4!r}")
    return params.second_order_gain * m2 * p_avg + 1.5 * params.fourth_order_gain * m4 * p_avg**2


def _period_harmonics(tones: ToneVector, max_denominator: int = 10_000) -> tuple[np.ndarray, Fraction]:
    """Integer harmonic index of every tone relative to the signal fundamental.

    The fundamental is ``tone_spacing / q`` where ``base/spacing = p/q``.
    """
    ratio = Fraction(tones.base_frequency / tones.tone_spacing).limit_denominator(max_denominator)
    p, q = ratio.numerator, ratio.denominator
    return p + q * np.arange(len(tones)), ratio


def synthesize(tones: ToneVector, oversample: int = 8, periods: int = 1) -> SampledSignal:
    """Sample y(t) = Re{sum_n c_n exp(j 2 pi f_n t)} over whole periods.

    The ratio base_frequency / tone_spacing is snapped to the nearest fraction
    with denominator at most 10^4, which fixes the period exactly. Phases are
    reduced modulo the period in integer arithmetic before the cosine is
    taken, so long periods do not lose precision.
    """
    if oversample < 8:
        raise DomainError("oversample must be >= 8")
    harmonics, ratio = _period_harmonics(tones)
    fundamental = tones.tone_spacing / ratio.denominator
    per_period = int(oversample * int(harmonics.max())) if harmonics.max() > 0 else oversample
    total = per_period * periods
    idx = np.arange(total, dtype=np.int64)
    y = np.zeros(total)
    for k, c in zip(harmonics, tones.coefficients):
        if c == 0:
            continue
        phase = 2.0 * np.pi * ((int(k) * idx) % per_period) / per_period
        y += c.real * np.cos(phase) - c.imag * np.sin(phase)
    sample_rate = per_period * fundamental
    return SampledSignal(y, sample_rate, max_frequency=float(harmonics.max() * fundamental))
