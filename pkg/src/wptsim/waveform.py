"""Closed-form multisine waveform and beamforming designs.

Every design returns complex weights ``w[n, m]`` meeting the transmit power
constraint with equality, sum |w|^2 = 2 P.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .channel import ChannelFreqResponse
from .errors import DegenerateChannelError, DomainError
from .rectenna import ToneVector, synthesize

__all__ = [
    "DESIGN_TAGS",
    "DesignMethod",
    "WaveformWeights",
    "design_waveform",
    "received_tones",
    "papr",
]

DESIGN_TAGS = ("UP", "ASS", "UPMF", "MF", "MAXPAPR", "SMF", "MISO_UPMF", "MISO_SMF")
CSIT_TAGS = frozenset(DESIGN_TAGS) - {"UP"}
SISO_TAGS = frozenset({"ASS", "UPMF", "MF", "MAXPAPR", "SMF"})

# Tones weaker than this fraction of the strongest are left empty by MAX PAPR.
INVERSION_FLOOR = 1e-6

_ALIASES = {"MAX_PAPR": "MAXPAPR", "MAX-PAPR": "MAXPAPR", "MISO-UPMF": "MISO_UPMF", "MISO-SMF": "MISO_SMF"}


@dataclass(frozen=True)
class DesignMethod:
    tag: str
    beta: float | None = None

    def __post_init__(self):
        tag = self.tag.strip().upper()
        tag = _ALIASES.get(tag, tag)
        if tag not in DESIGN_TAGS:
            raise DomainError(f"unknown waveform design {self.tag!r}")
        object.__setattr__(self, "tag", tag)
        if tag in ("SMF", "MISO_SMF"):
            if self.beta is None:
                raise DomainError(f"{tag} needs a beta")
            if not np.isfinite(self.beta):
                raise DomainError("beta must be finite")

    @property
    def needs_csit(self) -> bool:
        return self.tag in CSIT_TAGS

    @property
    def label(self) -> str:
        return f"{self.tag}(beta={self.beta:g})" if self.beta is not None else self.tag


@dataclass(frozen=True)
class WaveformWeights:
    weights: np.ndarray
    total_power: float
    method: DesignMethod | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.weights.shape

    def transmit_power(self) -> float:
        """Average transmit power 0.5 * ||S||_F^2."""
        return 0.5 * float(np.sum(np.abs(self.weights) ** 2))

    def to_dict(self) -> dict:
        n, m = self.weights.shape
        return {
            "method": self.method.tag if self.method else None,
            "beta": self.method.beta if self.method else None,
            "P": self.total_power,
            "N": n,
            "M": m,
            "weights": [[float(z.real), float(z.imag)] for z in self.weights.reshape(-1)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WaveformWeights":
        pairs = np.asarray(data["weights"], dtype=float).reshape(-1, 2)
        m = int(data.get("M", 1))
        weights = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(-1, m)
        method = DesignMethod(data["method"], data.get("beta")) if data.get("method") else None
        return cls(weights, float(data["P"]), method)


def _scaled_matched_filter(h: np.ndarray, beta: float, power: float, floor: float | None = None) -> np.ndarray:
    """w_n = h_n^H / ||h_n|| * ||h_n||^beta * sqrt(2P / sum ||h_n||^(2 beta)).

    Gains are normalized by the strongest tone before exponentiation; the
    common factor cancels in the power normalization.
    """
    gain = np.linalg.norm(h, axis=1)
    peak = gain.max()
    if peak == 0:
        raise DegenerateChannelError("all-zero channel")
    direction = np.empty_like(h)
    live = gain > 0
    direction[live] = np.conj(h[live]) / gain[live, None]
    direction[~live] = 1.0 / np.sqrt(h.shape[1])
    rel = gain / peak
    usable = np.ones_like(live) if floor is None else rel >= floor
    if beta < 0:
        usable &= live
    amp = np.zeros_like(rel)
    amp[usable] = rel[usable] ** beta
    amp *= np.sqrt(2.0 * power / np.sum(amp**2))
    return amp[:, None] * direction


def design_waveform(
    method: DesignMethod | str,
    channel: ChannelFreqResponse | None = None,
    n_tones: int | None = None,
    n_antennas: int | None = None,
    power: float = 1.0,
) -> WaveformWeights:
    """Transmit weights for one of the closed-form designs.

    UP needs no channel: pass ``n_tones`` (and optionally ``n_antennas``; the
    power is then split evenly over space as well as frequency). All other
    designs read the tone count and antenna count from ``channel``.
    """
    if isinstance(method, str):
        method = DesignMethod(method)
    if not power > 0:
        raise DomainError("power must be positive")
    tag = method.tag
    if channel is not None:
        n, m = channel.gains.shape
        if (n_tones is not None and n_tones != n) or (n_antennas is not None and n_antennas != m):
            raise DomainError("n_tones/n_antennas disagree with the channel")
    elif method.needs_csit:
        raise DomainError(f"{tag} requires channel state information")
    else:
        if n_tones is None:
            raise DomainError("UP without a channel needs n_tones")
        n, m = n_tones, n_antennas or 1
    if n < 1 or m < 1:
        raise DomainError("n_tones and n_antennas must be >= 1")
    if tag in SISO_TAGS and m != 1:
        raise DomainError(f"{tag} is a single-antenna design; use the MISO variant")

    if tag == "UP":
        w = np.full((n, m), np.sqrt(2.0 * power / (n * m)), dtype=complex)
    elif tag == "ASS":
        h = channel.gains[:, 0]
        best = int(np.argmax(np.abs(h)))
        w = np.zeros((n, 1), dtype=complex)
        w[best, 0] = np.sqrt(2.0 * power) * (np.conj(h[best]) / abs(h[best]) if h[best] != 0 else 1.0)
    elif tag in ("UPMF", "MISO_UPMF"):
        w = _scaled_matched_filter(channel.gains, 0.0, power)
    elif tag == "MF":
        w = _scaled_matched_filter(channel.gains, 1.0, power)
    elif tag == "MAXPAPR":
        w = _scaled_matched_filter(channel.gains, -1.0, power, floor=INVERSION_FLOOR)
    else:
        w = _scaled_matched_filter(channel.gains, float(method.beta), power)
    return WaveformWeights(w, float(power), method)


def received_tones(weights: WaveformWeights, channel: ChannelFreqResponse) -> ToneVector:
    """Received coefficient per tone, sum_m h[n, m] w[n, m]."""
    if weights.weights.shape != channel.gains.shape:
        raise DomainError(f"weights {weights.weights.shape} and channel {channel.gains.shape} differ in shape")
    coeffs = np.sum(channel.gains * weights.weights, axis=1)
    base = channel.f0_hz if channel.f0_hz > 0 else None
    return ToneVector(coeffs, channel.spacing_hz, base)


def papr(tones: ToneVector, oversample: int = 16) -> float:
    """Peak-to-average power ratio of the real passband signal over one period."""
    if not np.any(tones.coefficients):
        raise DomainError("PAPR of a zero signal is undefined")
    y = synthesize(tones, oversample=oversample).samples
    power = y * y
    return float(power.max() / power.mean())
