"""Closed-form z_DC scaling laws for waveforms, modulation and transmit diversity.

The waveform laws are asymptotic in N (and in M for the multi-antenna cells);
at small sizes the Monte Carlo harness is the reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diversity import td_gain_theoretical, td_multisine_gain
from .errors import DomainError
from .modulation import ModulationScheme, theoretical_m4
from .rectenna import RectennaParams, zdc_modulated

__all__ = ["ScalingCase", "scaling_waveform", "scaling_modulation", "scaling_td", "TD_SCALING_KINDS"]

TD_SCALING_KINDS = ("CW", "TD_CW", "TD_MOD", "TD_MULTISINE")


@dataclass(frozen=True)
class ScalingCase:
    channel_kind: str = "FF"
    strategy: str = "UPMF"
    n_tones: int = 16
    n_antennas: int = 1
    epsilon: float = 1.0
    power: float = 1.0
    params: RectennaParams = field(default_factory=RectennaParams)

    def __post_init__(self):
        kind = self.channel_kind.upper()
        strategy = self.strategy.upper()
        if kind not in ("FF", "FS"):
            raise DomainError("channel_kind must be FF or FS")
        if strategy not in ("UP", "UPMF"):
            raise DomainError("strategy must be UP or UPMF")
        if self.n_tones < 1 or self.n_antennas < 1:
            raise DomainError("n_tones and n_antennas must be >= 1")
        if not 0.0 <= abs(self.epsilon) <= 1.0:
            raise DomainError("epsilon must lie in [0, 1]")
        object.__setattr__(self, "channel_kind", kind)
        object.__setattr__(self, "strategy", strategy)

    @property
    def cell(self) -> str:
        regime = "M=1" if self.n_antennas == 1 else "M>>1"
        return f"{self.channel_kind}/{self.strategy}/N>>1,{regime}"


def scaling_waveform(case: ScalingCase) -> float:
    """Asymptotic z_DC of UP or UPMF under delayed CSIT with correlation epsilon.

    M = 1 selects the single-antenna cell; any M > 1 the large-M cell.
    """
    p, n, m = case.power, case.n_tones, case.n_antennas
    a2 = case.params.second_order_gain * p
    a4 = case.params.fourth_order_gain * p**2
    e2 = case.epsilon**2
    e4 = e2 * e2
    ff = case.channel_kind == "FF"
    if case.strategy == "UP":
        return a2 + (2.0 * a4 * n if ff else 3.0 * a4)
    if m == 1:
        if ff:
            return a2 + 2.0 * a4 * n
        return a2 + 3.0 * a4 + e4 * np.pi**2 / 16.0 * a4 * n
    second = e2 * a2 * m + (1.0 - e2) * a2
    stale = (1.0 - e2) ** 2 * (2.0 * a4 * n if ff else 3.0 * a4)
    return second + e4 * a4 * n * m**2 + stale


def scaling_modulation(scheme: ModulationScheme, power: float, params: RectennaParams) -> float:
    """k2 R P + (3/2) E|m|^4 k4 R^2 P^2 for a normalized modulation."""
    return zdc_modulated(1.0, theoretical_m4(scheme), power, params)


def scaling_td(
    kind: str,
    n_antennas: int,
    power: float,
    params: RectennaParams,
    *,
    scheme: ModulationScheme | None = None,
    n_tones: int | None = None,
) -> float:
    """k2 R P + (3/2) k4 R^2 P^2 G, with G composed from G_td, G_mod, G_mt."""
    kind = kind.upper()
    if kind not in TD_SCALING_KINDS:
        raise DomainError(f"kind must be one of {TD_SCALING_KINDS}")
    gain = 1.0
    if kind != "CW":
        gain = td_gain_theoretical(n_antennas)
    if kind == "TD_MOD":
        if scheme is None:
            raise DomainError("TD_MOD needs a modulation scheme")
        gain *= theoretical_m4(scheme)
    elif kind == "TD_MULTISINE":
        if n_tones is None:
            raise DomainError("TD_MULTISINE needs n_tones")
        gain *= td_multisine_gain(n_tones)
    return params.second_order_gain * power + 1.5 * params.fourth_order_gain * power**2 * gain
