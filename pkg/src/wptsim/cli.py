"""Command-line front end.

Exit status: 0 on success, 1 on usage or configuration errors, 2 on runtime
errors. Stochastic subcommands require ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .channel import ChannelFreqResponse
from .config import load_specs
from .errors import ConfigError, WptError
from .harness import rows_to_csv, rows_to_json, run_experiment
from .modulation import ModulationScheme, SymbolStream, empirical_moments
from .presets import PRESETS, preset
from .rectenna import RectennaParams, ToneVector, zdc_modulated, zdc_multisine_freq
from .scaling import ScalingCase, scaling_modulation, scaling_td, scaling_waveform
from .waveform import DesignMethod, WaveformWeights, design_waveform, received_tones


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_params(p: argparse.ArgumentParser) -> None:
    defaults = RectennaParams()
    p.add_argument("--k2", type=float, default=defaults.k2)
    p.add_argument("--k4", type=float, default=defaults.k4)
    p.add_argument("--r-ant", type=float, default=defaults.r_ant)


def _add_run_options(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=list(PRESETS))
    src.add_argument("--config", type=Path)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, help="override the trial count of every experiment")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", type=Path)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wptsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("design", help="print waveform weights as JSON")
    p.add_argument("--method", required=True)
    p.add_argument("--n", type=int, help="number of tones (UP without a channel)")
    p.add_argument("--m", type=int, default=None, help="number of antennas (UP without a channel)")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--beta", type=float)
    p.add_argument("--channel", type=Path, help="channel JSON file")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("zdc", help="evaluate z_DC of a serialized signal")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--tones", type=Path, help='JSON {"tones": [[re, im], ...]}')
    src.add_argument("--waveform", type=Path, help="waveform JSON from the design subcommand")
    src.add_argument("--stream", type=Path, help="symbol stream CSV (re,im per row)")
    p.add_argument("--channel", type=Path, help="channel JSON applied to --waveform (default: unit gains)")
    p.add_argument("--p", type=float, default=1.0, help="average power for --stream")
    _add_params(p)

    p = sub.add_parser("scaling", help="evaluate a closed-form scaling law")
    p.add_argument("--table", required=True, choices=("II", "III", "IV"))
    p.add_argument("--channel", choices=("ff", "fs"), default="ff")
    p.add_argument("--strategy", choices=("up", "upmf"), default="upmf")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--scheme", default="cw")
    p.add_argument("--l", type=float)
    p.add_argument("--order", type=int)
    p.add_argument("--kind", choices=("cw", "td_cw", "td_mod", "td_multisine"), default="td_cw")
    p.add_argument("--p", type=float, default=1.0)
    _add_params(p)

    for name, text in (
        ("montecarlo", "run Monte Carlo experiments"),
        ("mobility", "run delayed-CSIT frame loops under mobility"),
        ("sweep", "run parameter sweeps"),
    ):
        _add_run_options(sub.add_parser(name, help=text))

    sub.add_parser("presets", help="list built-in experiments")
    return parser


def _params(args) -> RectennaParams:
    return RectennaParams(k2=args.k2, k4=args.k4, r_ant=args.r_ant)


def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc.msg}") from None


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        output.write_text(text)


def _cmd_design(args) -> None:
    channel = ChannelFreqResponse.from_dict(_read_json(args.channel)) if args.channel else None
    method = DesignMethod(args.method, args.beta)
    weights = design_waveform(method, channel, n_tones=args.n, n_antennas=args.m, power=args.p)
    _emit(json.dumps(weights.to_dict(), indent=2), args.output)


def _cmd_zdc(args) -> None:
    params = _params(args)
    if args.stream:
        stream = SymbolStream.from_csv(args.stream.read_text())
        m2, m4 = empirical_moments(stream)
        value = zdc_modulated(m2, m4, args.p, params)
    elif args.tones:
        data = _read_json(args.tones)
        if "tones" not in data:
            raise ConfigError("tones", "missing")
        pairs = np.asarray(data["tones"], dtype=float).reshape(-1, 2)
        value = zdc_multisine_freq(ToneVector(pairs[:, 0] + 1j * pairs[:, 1]), params)
    else:
        weights = WaveformWeights.from_dict(_read_json(args.waveform))
        if args.channel:
            channel = ChannelFreqResponse.from_dict(_read_json(args.channel))
        else:
            channel = ChannelFreqResponse(np.ones(weights.weights.shape), "unit")
        value = zdc_multisine_freq(received_tones(weights, channel), params)
    print(f"{value:.10g}")


def _cmd_scaling(args) -> None:
    params = _params(args)
    if args.table == "II":
        case = ScalingCase(args.channel, args.strategy, args.n, args.m, args.epsilon, args.p, params)
        value = scaling_waveform(case)
    elif args.table == "III":
        value = scaling_modulation(ModulationScheme(args.scheme, order=args.order, l=args.l), args.p, params)
    else:
        scheme = ModulationScheme(args.scheme, order=args.order, l=args.l) if args.kind == "td_mod" else None
        value = scaling_td(args.kind, args.m, args.p, params, scheme=scheme, n_tones=args.n)
    print(f"{value:.10g}")


def _cmd_run(args) -> None:
    specs = preset(args.preset) if args.preset else load_specs(args.config)
    overrides = {"seed": args.seed}
    if args.trials is not None:
        overrides["trials"] = args.trials
    specs = [s.replace(**overrides) for s in specs]
    if args.command == "mobility":
        specs = [s for s in specs if s.mobility is not None]
        if not specs:
            raise UsageError("no experiment in the input defines a mobility profile")
    elif args.command == "sweep":
        specs = [s for s in specs if s.sweep_axis is not None]
        if not specs:
            raise UsageError("no experiment in the input defines a sweep")
    rows = [row for spec in specs for row in run_experiment(spec, workers=args.workers)]
    _emit(rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows), args.output)


def _cmd_presets(args) -> None:
    for name, (_, text) in PRESETS.items():
        print(f"{name:8s} {text}")


COMMANDS = {
    "design": _cmd_design,
    "zdc": _cmd_zdc,
    "scaling": _cmd_scaling,
    "montecarlo": _cmd_run,
    "mobility": _cmd_run,
    "sweep": _cmd_run,
    "presets": _cmd_presets,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"wptsim {args.command}: {exc}", file=sys.stderr)
        return 1
    except (WptError, OSError, KeyError, ValueError) as exc:
        print(f"wptsim {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
