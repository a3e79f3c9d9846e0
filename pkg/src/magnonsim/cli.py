"""Command-line interface: steady / sweep / resonance / thermal-threshold / check."""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import selfcheck
from .config import RunConfig, parse_config
from .errors import (
    BracketError,
    ConvergenceError,
    DegenerateSteadyStateError,
    MagnonSimError,
    SweepFailureError,
    UndefinedCorrelationError,
    ValidationError,
)
from .observables import temperature_for_occupation
from .resonance import resonance_set
from .steadystate import EVOLVE_RESIDUAL_TARGET, solve_steady
from .sweep import CSV_COLUMNS_1D, CSV_COLUMNS_2D, run_sweep, thermal_threshold, write_csv

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_DEGENERATE = 4
EXIT_UNDEFINED_G2 = 5
EXIT_BRACKET = 6
EXIT_SWEEP_FAILURE = 7
EXIT_IO = 8
EXIT_CHECK_FAILED = 9

_EXIT_CODES_HELP = """\
exit codes:
  0  success
  1  unexpected internal error
  2  configuration or validation error
  3  solver failed to converge
  4  steady state not unique (degenerate generator kernel)
  5  g2(0) undefined (zero magnon population)
  6  threshold bracket precondition violated
  7  sweep grid point failed both solvers
  8  output I/O error
  9  self-check (mode 'check') reported failures
"""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnonsim",
        description=(
            "Steady-state simulator for a driven magnon mode dispersively "
            "coupled to a driven qubit: magnon statistics g2(0), number "
            "distributions, resonance detunings, and thermal-noise thresholds."
        ),
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value configuration file")
    common.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override a configuration key (repeatable, applied after the file)",
    )
    common.add_argument("--out", metavar="PATH", help="output destination (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format for tabular modes")
    common.add_argument("--workers", type=int, metavar="N", help="parallel workers for sweeps")
    common.add_argument("--fock", type=int, metavar="N", help="magnon Fock truncation")
    for name, blurb in (
        ("steady", "solve one steady state and print a JSON summary"),
        ("sweep", "solve a 1-D or 2-D parameter grid and write CSV/JSON records"),
        ("resonance", "print the eight closed-form resonance detunings"),
        ("thermal-threshold", "bisect the thermal occupation where g2(0) crosses 1"),
        ("check", "run the built-in invariant suite"),
    ):
        sub.add_parser(name, parents=[common], help=blurb)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    text = ""
    if args.config:
        with open(args.config, "r", encoding="utf-8") as handle:
            text = handle.read()
    overrides = [f"mode={args.mode}"] + list(args.overrides)
    if args.fock is not None:
        overrides.append(f"n_fock={args.fock}")
    if args.out is not None:
        overrides.append(f"output_path={args.out}")
    if args.format is not None:
        overrides.append(f"output_format={args.format}")
    if args.workers is not None:
        overrides.append(f"workers={args.workers}")
    return parse_config(text, overrides)


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _run_steady(config: RunConfig) -> int:
    result = solve_steady(config.params)
    payload = {
        "g2": result.g2_zero,
        "p_n": [float(p) for p in result.p_n],
        "mean_magnon": result.mean_magnon,
        "qubit_excitation": result.qubit_excitation,
        "residual": result.residual_norm,
        "n_fock": config.params.n_fock,
        "converged": result.residual_norm < EVOLVE_RESIDUAL_TARGET,
    }
    _emit(config, json.dumps(payload) + "\n")
    return EXIT_OK


def _run_sweep(config: RunConfig) -> int:
    result = run_sweep(config.params, config.axes, workers=config.workers)
    if config.output_format == "json":
        header = CSV_COLUMNS_1D if len(config.axes) == 1 else CSV_COLUMNS_2D
        rows = []
        for record in result.records:
            values = list(record.axis_values) + [
                record.g2_zero, record.log10_g2, *record.p_n,
                record.mean_magnon, record.qubit_excitation, record.residual_norm,
            ]
            rows.append(dict(zip(header, values)))
        _emit(config, json.dumps(rows) + "\n")
    elif config.output_path:
        write_csv(result, config.output_path)
    else:
        write_csv(result, sys.stdout)
    return EXIT_OK


def _run_resonance(config: RunConfig) -> int:
    p = config.params
    res = resonance_set(p.delta_q, p.chi_qm, p.omega_s)
    if config.output_format == "json":
        payload = [
            {"order": r.order, "label": r.label, "detuning_gamma": r.detuning}
            for r in res.all()
        ]
        _emit(config, json.dumps(payload) + "\n")
    else:
        lines = ["order,label,detuning_gamma"]
        lines += [f"{r.order},{r.label},{r.detuning!r}" for r in res.all()]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def _run_thermal_threshold(config: RunConfig) -> int:
    result = thermal_threshold(config.params, config.noise_channel, config.noise_hi)
    omega_gamma = (
        config.omega_m_gamma if config.noise_channel == "m_th" else config.omega_q_gamma
    )
    freq_hz = omega_gamma * config.params.gamma_ref_hz / (2.0 * math.pi)
    payload = {
        "channel": result.channel,
        "crossing_occupation": result.crossing,
        "iterations": result.iterations,
        "g2_at_zero": result.g2_at_zero,
        "g2_at_hi": result.g2_at_hi,
        "frequency_hz": freq_hz,
        "temperature_k": temperature_for_occupation(freq_hz, result.crossing),
    }
    _emit(config, json.dumps(payload) + "\n")
    return EXIT_OK


def _run_check(config: RunConfig) -> int:
    results = selfcheck.run_all()
    lines = []
    for name, passed, detail in results:
        lines.append(f"PASS {name}" if passed else f"FAIL {name}: {detail}")
    _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK if all(passed for _, passed, _ in results) else EXIT_CHECK_FAILED


def run(config: RunConfig) -> int:
    """Dispatch a validated config; returns the process exit code."""
    handlers = {
        "steady": _run_steady,
        "sweep": _run_sweep,
        "resonance": _run_resonance,
        "thermal-threshold": _run_thermal_threshold,
        "check": _run_check,
    }
    return handlers[config.mode](config)


def _exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, ValidationError):
        return EXIT_CONFIG
    if isinstance(exc, ConvergenceError):
        return EXIT_CONVERGENCE
    if isinstance(exc, DegenerateSteadyStateError):
        return EXIT_DEGENERATE
    if isinstance(exc, UndefinedCorrelationError):
        return EXIT_UNDEFINED_G2
    if isinstance(exc, BracketError):
        return EXIT_BRACKET
    if isinstance(exc, SweepFailureError):
        return EXIT_SWEEP_FAILURE
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_UNEXPECTED


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args)
        code = run(config)
    except (MagnonSimError, OSError) as exc:
        code = _exit_code_for(exc)
        print(f"error exit={code} kind={type(exc).__name__}: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
