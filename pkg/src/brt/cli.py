"""Command-line interface.

Subcommands::

    brt decompose   --input f.csv [--rate HZ] --out stack.csv
    brt reconstruct --input stack.csv --out f.csv
    brt denoise     --input f.csv [--rate HZ] --out g.csv [--report r.json] [--baseline clean.csv]
    brt synth       --kind periodic|piecewise --out f.csv [--snr-db DB --noise-seed S]
    brt bench       --baselines synth:periodic,more.csv --levels 12:2.5:11 --trials 20 \
                    --records rec.csv --aggregates agg.json

Exit codes: 0 success, 2 usage or configuration error, 3 bad data or I/O,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .bench import SweepConfig, run_sweep, summarize, write_aggregates_json, write_records_csv
from .denoise import denoise_signal
from .errors import BrtError, ConfigError, DataError, NumericError, SweepCellError
from .io import load_signal, load_stack, write_signal, write_stack
from .metrics import add_white_gaussian
from .synth import SynthKind, SynthSpec, synthesize
from .transform import forward_brt, inverse_brt
from .types import DEFAULT_N_SCALES, DEFAULT_WINDOW_SECONDS, BrtConfig, NoiseSpec, Signal

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

SEED_ENV = "BRT_SEED"


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def parse_levels(text: str) -> list[float]:
    """``start:stop:count`` (inclusive, evenly spaced) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}") from None
        if count < 1:
            raise argparse.ArgumentTypeError("level count must be >= 1")
        return [float(v) for v in np.linspace(start, stop, count)]
    return _float_list(text)


def _add_transform_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scales", type=int, default=DEFAULT_N_SCALES, help="number of scales n (default 6)")
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW_SECONDS,
                   help="kernel window half-width in seconds (default 0.1)")
    lam = p.add_mutually_exclusive_group()
    lam.add_argument("--lambda-mult", type=float, default=1.0,
                     help="kernel bandwidth as a multiple of the input SD (default 1)")
    lam.add_argument("--lambda", dest="lambdas", type=_float_list,
                     help="explicit bandwidths: one value for all steps or n-1 comma-separated values")


def _transform_config(args, signal: Signal) -> BrtConfig:
    if args.lambdas:
        lambdas = args.lambdas
        if len(lambdas) == 1:
            lambdas = lambdas * max(args.scales - 1, 0)
        return BrtConfig(args.scales, tuple(lambdas), args.window)
    return BrtConfig.for_signal(signal, args.scales, args.window, args.lambda_mult)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brt", description="Residual-transform decomposition and denoising.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="signal CSV -> residual stack CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--rate", type=float, help="sample rate in Hz (required for single-column input)")
    p.add_argument("--out", required=True)
    _add_transform_args(p)

    p = sub.add_parser("reconstruct", help="residual stack CSV -> signal CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("denoise", help="threshold-denoise a signal CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--rate", type=float)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="write per-scale thresholds and counts as JSON")
    p.add_argument("--baseline", help="clean reference CSV; adds the SNR improvement to the report")
    p.add_argument("--threshold-coarsest", action="store_true", help="threshold the coarsest scale too")
    p.add_argument("--mad-center", choices=("median", "zero"), default="median")
    _add_transform_args(p)

    p = sub.add_parser("synth", help="write a synthetic test signal")
    p.add_argument("--kind", choices=[k.value for k in SynthKind], default=SynthKind.PERIODIC.value)
    p.add_argument("--length", type=int, default=1280)
    p.add_argument("--rate", type=float, default=128.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--snr-db", type=float, help="add white Gaussian noise at this SNR")
    p.add_argument("--noise-seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="Monte-Carlo SNR-improvement sweep")
    p.add_argument("--baselines", required=True,
                   help="comma list of synth:periodic, synth:piecewise or CSV paths")
    p.add_argument("--rate", type=float, help="sample rate for single-column baseline files")
    p.add_argument("--length", type=int, default=1280, help="length of synthetic baselines")
    p.add_argument("--synth-rate", type=float, default=128.0, help="sample rate of synthetic baselines")
    p.add_argument("--levels", type=parse_levels, default="12:2.5:11",
                   help="SNR levels, start:stop:count or comma list (default 12:2.5:11)")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--scales", type=_int_list, default=[DEFAULT_N_SCALES], help="comma list (default 6)")
    p.add_argument("--lambda-mults", type=_float_list, default=[1.0], help="comma list (default 1)")
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW_SECONDS)
    p.add_argument("--seed", type=int, help=f"base seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--records", required=True, help="records CSV output")
    p.add_argument("--aggregates", help="aggregates JSON output")
    return parser


def _cmd_decompose(args) -> None:
    signal = load_signal(args.input, args.rate)
    stack = forward_brt(signal, _transform_config(args, signal))
    write_stack(stack, args.out)


def _cmd_reconstruct(args) -> None:
    write_signal(inverse_brt(load_stack(args.input)), args.out)


def _cmd_denoise(args) -> None:
    noisy = load_signal(args.input, args.rate)
    baseline = load_signal(args.baseline, args.rate or noisy.sample_rate_hz) if args.baseline else None
    config = _transform_config(args, noisy)
    denoised, report = denoise_signal(
        noisy,
        config,
        threshold_coarsest=args.threshold_coarsest,
        center=args.mad_center,
        baseline=baseline,
    )
    write_signal(denoised, args.out)
    if args.report:
        payload = report.to_dict()
        payload["config"] = config.to_dict()
        payload["window_radius"] = config.window_radius(noisy.sample_rate_hz)
        payload["mad_center"] = args.mad_center
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _cmd_synth(args) -> None:
    spec = SynthSpec(SynthKind(args.kind), args.length, args.rate, args.seed, args.amplitude)
    signal = synthesize(spec)
    if args.snr_db is not None:
        signal = add_white_gaussian(signal, NoiseSpec(args.snr_db, args.noise_seed))
    write_signal(signal, args.out)


def _load_baselines(args) -> list[Signal]:
    out = []
    for item in (s.strip() for s in args.baselines.split(",")):
        if not item:
            continue
        if item.startswith("synth:"):
            kind = item.split(":", 1)[1]
            try:
                spec = SynthSpec(SynthKind(kind), args.length, args.synth_rate)
            except ValueError as exc:
                raise UsageError(f"unknown synthetic baseline {item!r}: {exc}") from None
            out.append(synthesize(spec))
        else:
            out.append(load_signal(item, args.rate))
    if not out:
        raise UsageError("no baselines given")
    return out


def _cmd_bench(args) -> None:
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"${SEED_ENV} must be an integer, got {env!r}") from None
    config = SweepConfig(
        snr_levels_db=tuple(args.levels),
        trials_per_level=args.trials,
        scale_counts=tuple(args.scales),
        lambda_multipliers=tuple(args.lambda_mults),
        base_seed=seed,
        window_seconds=args.window,
    )
    result = run_sweep(_load_baselines(args), config, workers=args.workers)
    write_records_csv(result.records, args.records)
    if args.aggregates:
        write_aggregates_json(summarize(result), args.aggregates, config)


COMMANDS = {
    "decompose": _cmd_decompose,
    "reconstruct": _cmd_reconstruct,
    "denoise": _cmd_denoise,
    "synth": _cmd_synth,
    "bench": _cmd_bench,
}


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, SweepCellError):
        return _exit_code(exc.cause)
    if isinstance(exc, (UsageError, ConfigError)):
        return EXIT_USAGE
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    if isinstance(exc, (DataError, OSError)):
        return EXIT_DATA
    return EXIT_USAGE


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except (BrtError, UsageError, OSError, ValueError) as exc:
        kind = type(exc).__name__
        print(f"brt {args.command}: {kind}: {exc}", file=sys.stderr)
        return _exit_code(exc)
    return EXIT_OK


def main() -> None:
    sys.exit(cli_main())
