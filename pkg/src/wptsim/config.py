"""JSON experiment configuration.

A config file holds one experiment object or a list of them::

    {
      "name": "fs-smf",
      "strategies": ["UP", {"kind": "SMF", "beta": 3}],
      "channel": {"kind": "selective", "n_tones": 16, "n_antennas": 1, "n_taps": 8},
      "power": 1.0,
      "params": {"k2": 0.0034, "k4": 0.3829, "r_ant": 50},
      "trials": 1000,
      "seed": 7,
      "epsilon": null,
      "mobility": {"velocity": 0.5, "carrier_frequency": 2.45e9},
      "frame": {"t_frame": 1.0, "t_pilot": 0.000512, "t_prev": 0.035, "noise_var": 0.0},
      "frames": 10,
      "symbols": 1024,
      "slots": 1024,
      "sweep": {"axis": "N", "values": [1, 2, 4, 8, 16]}
    }

Only ``strategies`` is required. Unknown or ill-typed keys raise
:class:`~wptsim.errors.ConfigError` naming the key.
"""

from __future__ import annotations

import json
from pathlib import Path

from .channel import ChannelSpec, MobilityProfile
from .errors import ConfigError, WptError
from .harness import ExperimentSpec, FrameConfig, Strategy
from .rectenna import RectennaParams

__all__ = ["spec_from_dict", "spec_to_dict", "load_specs"]

_TOP = {
    "name": str,
    "strategies": list,
    "channel": dict,
    "power": float,
    "params": dict,
    "trials": int,
    "seed": int,
    "epsilon": float,
    "mobility": dict,
    "frame": dict,
    "frames": int,
    "symbols": int,
    "slots": int,
    "sweep": dict,
}
_CHANNEL = {"kind": str, "n_tones": int, "n_antennas": int, "n_taps": int, "bandwidth": float, "center_frequency": float}
_PARAMS = {"k2": float, "k4": float, "r_ant": float}
_MOBILITY = {"velocity": float, "carrier_frequency": float}
_FRAME = {"t_frame": float, "t_pilot": float, "t_prev": float, "noise_var": float}
_STRATEGY = {"kind": str, "beta": float, "l": float, "scheme": str, "order": int}
_SWEEP = {"axis": str, "values": list}


def _check(obj: dict, schema: dict, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(where, "expected an object")
    out = {}
    for key, value in obj.items():
        path = f"{where}.{key}" if where else key
        if key not in schema:
            raise ConfigError(path, "unknown key")
        want = schema[key]
        if value is None:
            out[key] = None
            continue
        if want is float and isinstance(value, (int, float)) and not isinstance(value, bool):
            out[key] = float(value)
        elif want is int and isinstance(value, int) and not isinstance(value, bool):
            out[key] = value
        elif want not in (float, int) and isinstance(value, want):
            out[key] = value
        else:
            raise ConfigError(path, f"expected {want.__name__}, got {type(value).__name__}")
    return out


def _build(key: str, factory, kwargs: dict):
    try:
        return factory(**kwargs)
    except WptError as exc:
        raise ConfigError(key, str(exc)) from None


def spec_from_dict(data: dict, where: str = "") -> ExperimentSpec:
    top = _check(data, _TOP, where)
    prefix = f"{where}." if where else ""
    if "strategies" not in top or not top["strategies"]:
        raise ConfigError(prefix + "strategies", "required, nonempty list")
    strategies = []
    for i, item in enumerate(top.pop("strategies")):
        key = f"{prefix}strategies[{i}]"
        if isinstance(item, str):
            item = {"kind": item}
        fields = _check(item, _STRATEGY, key)
        if "kind" not in fields:
            raise ConfigError(key + ".kind", "required")
        strategies.append(_build(key, Strategy, fields))
    kwargs = {"strategies": tuple(strategies)}
    if top.get("channel") is not None:
        kwargs["channel"] = _build(prefix + "channel", ChannelSpec, _check(top["channel"], _CHANNEL, prefix + "channel"))
    if top.get("params") is not None:
        kwargs["params"] = _build(prefix + "params", RectennaParams, _check(top["params"], _PARAMS, prefix + "params"))
    if top.get("mobility") is not None:
        fields = _check(top["mobility"], _MOBILITY, prefix + "mobility")
        if "velocity" not in fields:
            raise ConfigError(prefix + "mobility.velocity", "required")
        kwargs["mobility"] = _build(prefix + "mobility", MobilityProfile, fields)
    if top.get("frame") is not None:
        kwargs["frame"] = _build(prefix + "frame", FrameConfig, _check(top["frame"], _FRAME, prefix + "frame"))
    if top.get("sweep") is not None:
        fields = _check(top["sweep"], _SWEEP, prefix + "sweep")
        if "axis" not in fields or "values" not in fields:
            raise ConfigError(prefix + "sweep", "needs both axis and values")
        values = fields["values"]
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
            raise ConfigError(prefix + "sweep.values", "expected a list of numbers")
        kwargs["sweep_axis"] = fields["axis"]
        kwargs["sweep_values"] = tuple(values)
    for key in ("name", "power", "trials", "seed", "epsilon", "frames", "symbols", "slots"):
        if top.get(key) is not None:
            kwargs[key] = top[key]
    try:
        return ExperimentSpec(**kwargs)
    except WptError as exc:
        message = str(exc)
        culprit = next((k for k in ("sweep", "epsilon", "trials", "seed", "power") if k in message), "experiment")
        raise ConfigError(prefix + culprit, message) from None


def spec_to_dict(spec: ExperimentSpec) -> dict:
    ch = spec.channel
    out = {
        "name": spec.name,
        "strategies": [s.to_dict() for s in spec.strategies],
        "channel": {
            "kind": ch.kind,
            "n_tones": ch.n_tones,
            "n_antennas": ch.n_antennas,
            "n_taps": ch.n_taps,
            "bandwidth": ch.bandwidth,
            "center_frequency": ch.center_frequency,
        },
        "power": spec.power,
        "params": spec.params.to_dict(),
        "trials": spec.trials,
        "seed": spec.seed,
        "epsilon": spec.epsilon,
        "frame": {
            "t_frame": spec.frame.t_frame,
            "t_pilot": spec.frame.t_pilot,
            "t_prev": spec.frame.t_prev,
            "noise_var": spec.frame.noise_var,
        },
        "frames": spec.frames,
        "symbols": spec.symbols,
        "slots": spec.slots,
    }
    if spec.mobility is not None:
        out["mobility"] = {"velocity": spec.mobility.velocity, "carrier_frequency": spec.mobility.carrier_frequency}
    if spec.sweep_axis is not None:
        out["sweep"] = {"axis": spec.sweep_axis, "values": list(spec.sweep_values)}
    return out


def load_specs(path: str | Path) -> list[ExperimentSpec]:
    """Read one experiment or a list of experiments from a JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if isinstance(data, list):
        return [spec_from_dict(item, where=f"[{i}]") for i, item in enumerate(data)]
    return [spec_from_dict(data)]
