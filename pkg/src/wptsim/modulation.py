"""Conventional and energy-oriented modulation symbol streams."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "MODULATION_TAGS",
    "ModulationScheme",
    "SymbolStream",
    "sample_symbols",
    "theoretical_m4",
    "empirical_moments",
]

MODULATION_TAGS = ("CW", "BPSK", "QPSK", "PSK", "QAM16", "CSCG", "REALGAUSSIAN", "FLASH")

_ALIASES = {
    "16QAM": "QAM16",
    "QAM": "QAM16",
    "CG": "CSCG",
    "COMPLEXGAUSSIAN": "CSCG",
    "RG": "REALGAUSSIAN",
    "REAL_GAUSSIAN": "REALGAUSSIAN",
}

_QAM16_LEVELS = np.array([-3.0, -1.0, 1.0, 3.0]) / np.sqrt(10.0)


@dataclass(frozen=True)
class ModulationScheme:
    """A symbol alphabet or distribution with unit mean-square.

    ``order`` is the PSK size (BPSK and QPSK are shorthands for 2 and 4);
    ``l`` is the flash-signalling peak factor.
    """

    tag: str
    order: int | None = None
    l: float | None = None

    def __post_init__(self):
        tag = self.tag.strip().upper().replace(" ", "")
        tag = _ALIASES.get(tag, tag)
        if tag not in MODULATION_TAGS:
            raise DomainError(f"unknown modulation {self.tag!r}")
        order = self.order
        if tag == "BPSK":
            order = 2
        elif tag == "QPSK":
            order = 4
        elif tag == "PSK":
            if order is None or order < 2:
                raise DomainError("PSK order must be >= 2")
        if tag == "FLASH":
            if self.l is None or not self.l >= 1:
                raise DomainError("flash signalling needs l >= 1")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "order", order)

    @classmethod
    def flash(cls, l: float) -> "ModulationScheme":
        return cls("FLASH", l=l)

    @classmethod
    def psk(cls, order: int) -> "ModulationScheme":
        return cls("PSK", order=order)

    @property
    def label(self) -> str:
        if self.tag == "FLASH":
            return f"FLASH(l={self.l:g})"
        if self.tag == "PSK":
            return f"PSK{self.order}"
        return self.tag


@dataclass(frozen=True)
class SymbolStream:
    symbols: np.ndarray
    scheme: ModulationScheme | None = None

    def __len__(self) -> int:
        return self.symbols.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["re", "im"])
        for z in self.symbols:
            writer.writerow([repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SymbolStream":
        rows = list(csv.reader(io.StringIO(text)))
        if rows and rows[0] and rows[0][0].strip().lower() == "re":
            rows = rows[1:]
        values = np.array([complex(float(r[0]), float(r[1])) for r in rows if r], dtype=complex)
        return cls(values)


def sample_symbols(scheme: ModulationScheme, count: int, rng: np.random.Generator) -> SymbolStream:
    """Draw ``count`` i.i.d. symbols normalized to E|m|^2 = 1."""
    if count < 1:
        raise DomainError("count must be >= 1")
    tag = scheme.tag
    if tag == "CW":
        m = np.ones(count, dtype=complex)
    elif tag == "BPSK":
        m = rng.choice(np.array([1.0, -1.0]), size=count).astype(complex)
    elif tag in ("QPSK", "PSK"):
        k = rng.integers(0, scheme.order, size=count)
        m = np.exp(2j * np.pi * k / scheme.order)
    elif tag == "QAM16":
        idx = rng.integers(0, 4, size=(count, 2))
        m = _QAM16_LEVELS[idx[:, 0]] + 1j * _QAM16_LEVELS[idx[:, 1]]
    elif tag == "CSCG":
        z = rng.standard_normal((count, 2))
        m = np.sqrt(0.5) * (z[:, 0] + 1j * z[:, 1])
    elif tag == "REALGAUSSIAN":
        m = rng.standard_normal(count).astype(complex)
    else:
        l = float(scheme.l)
        on = rng.random(count) < 1.0 / l**2
        phase = rng.uniform(0.0, 2.0 * np.pi, size=count)
        m = np.where(on, l * np.exp(1j * phase), 0.0)
    return SymbolStream(np.asarray(m, dtype=complex), scheme)


def theoretical_m4(scheme: ModulationScheme) -> float:
    """E|m|^4 of the normalized scheme."""
    tag = scheme.tag
    if tag in ("CW", "BPSK", "QPSK", "PSK"):
        return 1.0
    if tag == "QAM16":
        return 1.32
    if tag == "CSCG":
        return 2.0
    if tag == "REALGAUSSIAN":
        return 3.0
    return float(scheme.l) ** 2


def empirical_moments(stream: SymbolStream | np.ndarray) -> tuple[float, float]:
    """Sample means of |m|^2 and |m|^4."""
    m = stream.symbols if isinstance(stream, SymbolStream) else np.asarray(stream)
    if m.size == 0:
        raise DomainError("empty symbol stream")
    p = np.abs(m) ** 2
    return float(np.mean(p)), float(np.mean(p * p))
