"""Phase-sweeping transmit diversity with dumb antennas.

Each antenna carries the same signal (CW, a modulation symbol stream, or an
in-phase UP multisine) rotated by its own i.i.d. uniform phase, refreshed
every slot. The resulting fluctuation of the effective channel feeds the
fourth-order term of z_DC without any CSIT.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelFreqResponse
from .errors import DomainError
from .modulation import ModulationScheme, sample_symbols
from .rectenna import RectennaParams, zdc_terms

__all__ = [
    "PhaseSchedule",
    "TDSignal",
    "td_phase_schedule",
    "td_baseband",
    "td_received",
    "td_zdc",
    "td_gain_theoretical",
    "td_multisine_gain",
]

TD_KINDS = ("cw", "modulated", "multisine")
DEFAULT_SLOT_RATE = 2.5e6


@dataclass(frozen=True)
class PhaseSchedule:
    """Phases in [0, 2 pi), one row per slot and one column per antenna."""

    phases: np.ndarray
    slot_rate: float = DEFAULT_SLOT_RATE

    def __post_init__(self):
        ph = np.asarray(self.phases, dtype=float)
        if ph.ndim != 2 or ph.shape[1] < 1:
            raise DomainError("phase schedule must be slots x antennas with at least one antenna")
        if np.any((ph < 0) | (ph >= 2 * np.pi)):
            raise DomainError("phases must lie in [0, 2 pi)")
        object.__setattr__(self, "phases", ph)

    @property
    def n_slots(self) -> int:
        return self.phases.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.phases.shape[1]


@dataclass(frozen=True)
class TDSignal:
    """Per-slot transmit weights, shape (slots, tones, antennas)."""

    weights: np.ndarray
    kind: str
    power: float

    def slot_power(self) -> np.ndarray:
        """Transmit power 0.5 * sum |w|^2 in every slot."""
        return 0.5 * np.sum(np.abs(self.weights) ** 2, axis=(1, 2))


def td_phase_schedule(
    n_antennas: int, slots: int, rng: np.random.Generator, slot_rate: float = DEFAULT_SLOT_RATE
) -> PhaseSchedule:
    if n_antennas < 1 or slots < 1:
        raise DomainError("n_antennas and slots must be >= 1")
    return PhaseSchedule(rng.uniform(0.0, 2.0 * np.pi, size=(slots, n_antennas)), slot_rate)


def td_baseband(
    kind: str,
    schedule: PhaseSchedule,
    power: float = 1.0,
    rng: np.random.Generator | None = None,
    *,
    scheme: ModulationScheme | None = None,
    n_tones: int | None = None,
) -> TDSignal:
    """Per-antenna weights for transmit diversity.

    ``cw``: amplitude sqrt(2P/M) on every antenna. ``modulated``: one symbol
    per slot shared by all antennas, amplitude sqrt(2P/M) |m|. ``multisine``:
    N equal in-phase tones of amplitude sqrt(2P/(NM)); the antenna phase
    rotates all of its tones together.
    """
    kind = kind.lower()
    if kind not in TD_KINDS:
        raise DomainError(f"transmit diversity kind must be one of {TD_KINDS}, got {kind!r}")
    slots, m = schedule.phases.shape
    rot = np.exp(1j * schedule.phases)
    if kind == "cw":
        w = np.sqrt(2.0 * power / m) * rot[:, None, :]
    elif kind == "modulated":
        if scheme is None or rng is None:
            raise DomainError("modulated transmit diversity needs a scheme and an rng")
        symbols = sample_symbols(scheme, slots, rng).symbols
        w = np.sqrt(2.0 * power / m) * (symbols[:, None] * rot)[:, None, :]
    else:
        if n_tones is None or n_tones < 1:
            raise DomainError("multisine transmit diversity needs n_tones >= 1")
        w = np.broadcast_to(np.sqrt(2.0 * power / (n_tones * m)) * rot[:, None, :], (slots, n_tones, m)).copy()
    return TDSignal(w, kind, float(power))


def td_received(signal: TDSignal, channel: ChannelFreqResponse | None = None) -> np.ndarray:
    """Received tone coefficients per slot, shape (slots, tones).

    ``channel=None`` means a unit gain from every antenna on every tone.
    """
    if channel is None:
        return signal.weights.sum(axis=2)
    if channel.gains.shape != signal.weights.shape[1:]:
        raise DomainError("channel shape does not match the transmit diversity signal")
    return np.einsum("snm,nm->sn", signal.weights, channel.gains)


def td_zdc(
    signal: TDSignal, params: RectennaParams, channel: ChannelFreqResponse | None = None
) -> tuple[float, float]:
    """Slot-averaged (second-order, fourth-order) z_DC contributions."""
    second, fourth = zdc_terms(td_received(signal, channel), params)
    return float(np.mean(second)), float(np.mean(fourth))


def td_gain_theoretical(n_antennas: int) -> float:
    """Fourth-order gain of TD-CW over single-antenna CW, 1 + (M - 1)/M."""
    if n_antennas < 1:
        raise DomainError("n_antennas must be >= 1")
    return 2.0 - 1.0 / n_antennas


def td_multisine_gain(n_tones: int, exact: bool = False) -> float:
    """Fourth-order gain of an in-phase UP multisine over CW.

    The default is the large-N approximation 2N/3. With ``exact=True`` the
    finite-N value is evaluated by the frequency-domain moment sum.
    """
    if n_tones < 1:
        raise DomainError("n_tones must be >= 1")
    if not exact:
        return 2.0 * n_tones / 3.0
    unit = RectennaParams(k2=1.0, k4=1.0, r_ant=1.0)
    _, multisine = zdc_terms(np.full(n_tones, np.sqrt(2.0 / n_tones)), unit)
    _, cw = zdc_terms(np.array([np.sqrt(2.0)]), unit)
    return float(multisine / cw)
