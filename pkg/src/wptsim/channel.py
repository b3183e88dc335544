"""MISO channel frequency responses, Gauss-Markov time evolution, LS estimation."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import j0

from .errors import DomainError

__all__ = [
    "SPEED_OF_LIGHT",
    "ChannelFreqResponse",
    "ChannelSpec",
    "MobilityProfile",
    "crandn",
    "default_grid",
    "sample_channel",
    "jakes_correlation",
    "jakes_epsilon",
    "evolve_gauss_markov",
    "ls_estimate",
    "pilot_observation",
]

SPEED_OF_LIGHT = 3e8
CENTER_FREQUENCY = 2.45e9
BANDWIDTH = 10e6
EPSILON_CEILING = 1.0 - 1e-9

CHANNEL_KINDS = ("flat", "selective", "unit")


def crandn(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    """Circularly symmetric complex Gaussian samples, CN(0, variance)."""
    z = rng.standard_normal(tuple(np.atleast_1d(shape)) + (2,))
    return np.sqrt(variance / 2.0) * (z[..., 0] + 1j * z[..., 1])


def default_grid(n_tones: int, bandwidth: float = BANDWIDTH, center: float = CENTER_FREQUENCY) -> tuple[float, float]:
    """Lowest tone frequency and spacing for N tones spread over ``bandwidth``."""
    spacing = bandwidth / n_tones
    return center - bandwidth / 2.0 + spacing / 2.0, spacing


@dataclass(frozen=True)
class ChannelFreqResponse:
    """Complex gains ``h[n, m]`` for tone ``n`` and transmit antenna ``m``."""

    gains: np.ndarray
    kind: str = "selective"
    f0_hz: float = 0.0
    spacing_hz: float = 1.0

    def __post_init__(self):
        h = np.asarray(self.gains, dtype=complex)
        if h.ndim == 1:
            h = h[:, None]
        if h.ndim != 2 or h.shape[0] < 1 or h.shape[1] < 1:
            raise DomainError("gains must be an N x M array with N, M >= 1")
        if not np.all(np.isfinite(h)):
            raise DomainError("channel gains must be finite")
        object.__setattr__(self, "gains", h)

    @property
    def n_tones(self) -> int:
        return self.gains.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.gains.shape[1]

    @property
    def amplitudes(self) -> np.ndarray:
        """Per-tone effective gain ||h_n|| (A_n for a single antenna)."""
        return np.linalg.norm(self.gains, axis=1)

    def with_gains(self, gains: np.ndarray) -> "ChannelFreqResponse":
        return ChannelFreqResponse(gains, self.kind, self.f0_hz, self.spacing_hz)

    def to_dict(self) -> dict:
        flat = self.gains.reshape(-1)
        return {
            "kind": self.kind,
            "N": self.n_tones,
            "M": self.n_antennas,
            "f0_hz": self.f0_hz,
            "spacing_hz": self.spacing_hz,
            "gains": [[float(z.real), float(z.imag)] for z in flat],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ChannelFreqResponse":
        n, m = int(data["N"]), int(data["M"])
        pairs = np.asarray(data["gains"], dtype=float)
        if pairs.shape != (n * m, 2):
            raise DomainError(f"expected {n * m} [re, im] pairs, got shape {pairs.shape}")
        gains = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(n, m)
        return cls(gains, data.get("kind", "selective"), float(data.get("f0_hz", 0.0)), float(data.get("spacing_hz", 1.0)))

    @classmethod
    def from_json(cls, text: str) -> "ChannelFreqResponse":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ChannelSpec:
    """Statistical description of a channel draw.

    ``flat`` draws one CN(0, 1) gain per antenna shared by every tone.
    ``selective`` draws ``n_taps`` equal-power Rayleigh taps per antenna and
    evaluates their DFT on the tone grid. ``unit`` is a deterministic all-ones
    channel (cable-fed measurements).
    """

    kind: str = "selective"
    n_tones: int = 16
    n_antennas: int = 1
    n_taps: int = 8
    bandwidth: float = BANDWIDTH
    center_frequency: float = CENTER_FREQUENCY
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in CHANNEL_KINDS:
            raise DomainError(f"channel kind must be one of {CHANNEL_KINDS}, got {self.kind!r}")
        if self.n_tones < 1 or self.n_antennas < 1:
            raise DomainError("n_tones and n_antennas must be >= 1")
        if self.n_taps < 1:
            raise DomainError("n_taps must be >= 1")

    @property
    def grid(self) -> tuple[float, float]:
        return default_grid(self.n_tones, self.bandwidth, self.center_frequency)

    def replace(self, **changes) -> "ChannelSpec":
        from dataclasses import replace

        return replace(self, **changes)


def sample_channel(spec: ChannelSpec, rng: np.random.Generator | None = None) -> ChannelFreqResponse:
    """Draw a channel realization with unit average power per (n, m) entry."""
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    n, m = spec.n_tones, spec.n_antennas
    f0, spacing = spec.grid
    if spec.kind == "unit":
        gains = np.ones((n, m), dtype=complex)
    elif spec.kind == "flat":
        gains = np.broadcast_to(crandn(rng, m), (n, m)).copy()
    else:
        taps = crandn(rng, (spec.n_taps, m), variance=1.0 / spec.n_taps)
        dft = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(spec.n_taps)) / n)
        gains = dft @ taps
    return ChannelFreqResponse(gains, spec.kind, f0, spacing)


@dataclass(frozen=True)
class MobilityProfile:
    """Terminal velocity, carrier and channel instantiation interval."""

    velocity: float
    carrier_frequency: float = CENTER_FREQUENCY
    interval: float = 1.0

    def __post_init__(self):
        if self.velocity < 0:
            raise DomainError("velocity must be >= 0")
        if not (self.carrier_frequency > 0 and self.interval > 0):
            raise DomainError("carrier_frequency and interval must be positive")

    @property
    def doppler(self) -> float:
        """Maximum Doppler shift v f_c / c in Hz."""
        return self.velocity * self.carrier_frequency / SPEED_OF_LIGHT


def jakes_correlation(profile: MobilityProfile) -> float:
    """Raw Jakes correlation J0(2 pi f_D T); may be negative."""
    return float(j0(2.0 * np.pi * profile.doppler * profile.interval))


def jakes_epsilon(profile: MobilityProfile) -> float:
    """Time-correlation coefficient usable in the Gauss-Markov recursion.

    Returns |J0(2 pi f_D T)| clipped to [0, 1 - 1e-9]. The magnitude is kept
    because a negative lag correlation only flips the sign of the whole
    channel, which leaves every z_DC figure of merit unchanged.
    """
    return min(abs(jakes_correlation(profile)), EPSILON_CEILING)


def evolve_gauss_markov(
    h_prev: ChannelFreqResponse, epsilon: float, spec: ChannelSpec, rng: np.random.Generator
) -> ChannelFreqResponse:
    """One step of h_k = eps h_{k-1} + sqrt(1 - eps^2) g_k.

    The innovation ``g_k`` is a fresh draw from ``spec``: shared across tones
    for a flat channel, tone-dependent for a selective one. A unit channel
    never changes.
    """
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must lie in [0, 1), got {epsilon!r}")
    if (spec.n_tones, spec.n_antennas) != h_prev.gains.shape:
        raise DomainError("channel spec does not match the previous realization")
    if spec.kind == "unit":
        return h_prev
    g = sample_channel(spec, rng).gains
    return h_prev.with_gains(epsilon * h_prev.gains + np.sqrt(1.0 - epsilon**2) * g)


def pilot_observation(
    channel: ChannelFreqResponse, pilot, noise_var: float, rng: np.random.Generator
) -> np.ndarray:
    """Received pilot tones h * pilot + CN(0, noise_var) noise, per antenna."""
    pilot = np.asarray(pilot, dtype=complex)
    if pilot.ndim == 1:
        pilot = pilot[:, None]
    received = channel.gains * pilot
    if noise_var > 0:
        received = received + crandn(rng, received.shape, noise_var)
    return received


def ls_estimate(pilot, received, *, f0_hz: float = 0.0, spacing_hz: float = 1.0) -> ChannelFreqResponse:
    """Least-squares estimate received / pilot on every sounded tone.

    Antennas are assumed sounded on orthogonal resources, so columns of
    ``received`` are estimated independently. ``pilot`` broadcasts against
    ``received``.
    """
    pilot = np.asarray(pilot, dtype=complex)
    received = np.asarray(received, dtype=complex)
    if received.ndim == 1:
        received = received[:, None]
    if pilot.ndim == 1:
        pilot = pilot[:, None]
    if np.any(pilot == 0):
        raise DomainError("pilot contains a zero entry")
    return ChannelFreqResponse(received / pilot, "estimate", f0_hz, spacing_hz)
