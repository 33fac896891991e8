"""Command-line interface.

Subcommands::

    steady <config>                          solve the classical steady state
    smatrix <config> --omega <x>             4x4 scattering probabilities at one frequency
    sweep <config> [--out <csv>]             run the configured sweep, write CSV
    figdata <name> --outdir <dir>            write bundled figure-reproduction CSVs
    verify-appendix <config> [--as-printed]  closed forms vs direct inversion
    table1 <config> [--tol-low <t>]          suppressed-path grid over flux and probe
    classify <config> --omega <x>            directional-routing verdict

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .config import parse_config
from .dynamics import Basis, build_dynamics_matrix, stability_report, to_normal_mode
from .errors import (
    AmbiguousRouting,
    EigenFailure,
    InvalidParameter,
    NonConvergence,
    ParseError,
    SingularMatrix,
    UnstablePoint,
    ValidationError,
)
from .model import LinearizedSystem, PlaquetteParams, linearize, solve_steady_state
from .routing import classify_direction, inhibited_path_grid, isolation_db
from .scattering import scattering_matrix, verify_closed_forms
from .sweep import FIGDATA_NAMES, SweepSpec, figdata, run_sweep, write_csv

_FMT = "{:.16e}".format


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)


def _as_linearized(parsed, tol: float = 1e-12, max_iter: int = 500):
    """Resolve any parsed config object to (LinearizedSystem, frame shift)."""
    base = parsed.base if isinstance(parsed, SweepSpec) else parsed
    if isinstance(base, PlaquetteParams):
        lin = linearize(base, solve_steady_state(base, tol=tol, max_iter=max_iter))
        shift = lin.omega_m
        return lin.shift_frame(shift), shift
    return base, 0.0


def _basis_of(parsed) -> Basis:
    return parsed.basis if isinstance(parsed, SweepSpec) else Basis.BARE


def _cmd_steady(args) -> int:
    parsed = _load(args.config)
    base = parsed.base if isinstance(parsed, SweepSpec) else parsed
    if not isinstance(base, PlaquetteParams):
        raise ValidationError("system", "the steady subcommand needs a 'physical' system")
    state = solve_steady_state(base, tol=args.tol, max_iter=args.max_iter)
    for name, value in (
        ("alpha_1", state.alpha_1),
        ("alpha_2", state.alpha_2),
        ("beta_1", state.beta_1),
        ("beta_2", state.beta_2),
    ):
        print(f"{name} = {_FMT(value.real)} {value.imag:+.16e}j  (|.| = {_FMT(abs(value))})")
    print(f"residual = {_FMT(state.residual)}")
    print(f"iterations = {state.iterations}")
    return 0


def _print_matrix(ports, matrix) -> None:
    width = 12
    header = " " * 6 + "".join(f"{'from ' + p:>{width}}" for p in ports)
    print(header)
    for i, row_port in enumerate(ports):
        cells = "".join(f"{matrix[i, j]:>{width}.6f}" for j in range(4))
        print(f"to {row_port:<3}" + cells)


def _cmd_smatrix(args) -> int:
    parsed = _load(args.config)
    lin, shift = _as_linearized(parsed)
    d = build_dynamics_matrix(lin)
    if _basis_of(parsed) is Basis.NORMAL:
        d = to_normal_mode(d)
    result = scattering_matrix(d, args.omega - shift)
    print(f"scattering probabilities at omega = {_FMT(args.omega)} (basis: {d.basis.value})")
    _print_matrix(result.ports, result.s)
    report = stability_report(d)
    print(f"stable: {report.stable}")
    return 0


def _cmd_sweep(args) -> int:
    parsed = _load(args.config)
    if not isinstance(parsed, SweepSpec):
        raise ValidationError("sweep", "config has no 'sweep' section")
    out = args.out or parsed.output_path
    if not out:
        raise ValidationError("output", "no output path: set output.path in the config or pass --out")
    table = run_sweep(parsed)
    path = write_csv(table, out)
    print(f"wrote {path} ({table.axis_values.size} rows)")
    return 0


def _cmd_figdata(args) -> int:
    for path in figdata(args.name, args.outdir):
        print(f"wrote {path}")
    return 0


def _cmd_verify_appendix(args) -> int:
    parsed = _load(args.config)
    lin, _ = _as_linearized(parsed)
    wm, jm = lin.omega_m, lin.J_m
    half_span = 3.0 * jm if jm > 0 else max(3.0 * lin.kappa, 1.0)
    grid = [wm - half_span + 2.0 * half_span * k / (args.points - 1) for k in range(args.points)]
    report = verify_closed_forms(lin, grid, tol=args.tol)
    print(report.summary(as_printed=args.as_printed))
    return 0


def _cmd_table1(args) -> int:
    parsed = _load(args.config)
    lin, _ = _as_linearized(parsed)
    grid = inhibited_path_grid(lin, tol_low=args.tol_low)
    print(f"suppressed-path check, tol_low = {grid.tol_low:g}")
    for cell in grid.cells:
        sign = "-" if cell.omega <= lin.omega_m else "+"
        print(f"flux = {cell.flux:.6f} rad, omega = omega_m {sign} J_m ({cell.omega:.6g}):")
        for i, j, value, ok in cell.entries:
            print(f"  S{i}{j} = {value:.3e}  {'ok' if ok else 'NOT INHIBITED'}")
        print(f"  all inhibited: {cell.all_inhibited}")
    return 0


def _cmd_classify(args) -> int:
    parsed = _load(args.config)
    lin, shift = _as_linearized(parsed)
    d = build_dynamics_matrix(lin)
    if _basis_of(parsed) is Basis.NORMAL:
        d = to_normal_mode(d)
    result = scattering_matrix(d, args.omega - shift)
    verdict = classify_direction(result, high=args.high, low=args.low)
    ports = result.ports
    print(f"passed: {verdict.passed}")
    print(
        f"transmitter: port {verdict.transmitter} ({ports[verdict.transmitter - 1]}), "
        f"receiver: port {verdict.receiver} ({ports[verdict.receiver - 1]}), "
        f"terminals: ports {verdict.terminals[0]} and {verdict.terminals[1]}"
    )
    print(
        "one-way checks: "
        f"to-terminals={verdict.one_way_to_terminals} "
        f"to-receiver={verdict.one_way_to_receiver} "
        f"return={verdict.one_way_return}"
    )
    for i, j, value in verdict.inhibited:
        print(f"  suppressed S{i}{j} = {value:.3e}")
    iso = isolation_db(result, verdict.transmitter, verdict.receiver)
    flag = "  (beyond floor)" if math.isinf(iso) else ""
    print(
        f"isolation S{verdict.transmitter}{verdict.receiver}/"
        f"S{verdict.receiver}{verdict.transmitter}: {iso:.2f} dB{flag}"
    )
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plaquette",
        description="Scattering and nonreciprocal-routing calculations for a four-mode optomechanical plaquette.",
    )
    parser.add_argument("--version", action="version", version=f"plaquette {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("steady", help="solve the classical steady state of a physical config")
    p.add_argument("config")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=500)
    p.set_defaults(func=_cmd_steady)

    p = sub.add_parser("smatrix", help="scattering probabilities at one probe frequency")
    p.add_argument("config")
    p.add_argument("--omega", type=float, required=True)
    p.set_defaults(func=_cmd_smatrix)

    p = sub.add_parser("sweep", help="run the configured sweep and write CSV")
    p.add_argument("config")
    p.add_argument("--out", default=None, help="override the config output path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figdata", help="write bundled figure-reproduction CSVs")
    p.add_argument("name", choices=FIGDATA_NAMES)
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=_cmd_figdata)

    p = sub.add_parser("verify-appendix", help="closed forms vs direct inversion on a frequency grid")
    p.add_argument("config")
    p.add_argument("--as-printed", action="store_true", help="report the uncorrected closed forms")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--points", type=int, default=101)
    p.set_defaults(func=_cmd_verify_appendix)

    p = sub.add_parser("table1", help="suppressed-path grid over flux and probe frequency")
    p.add_argument("config")
    p.add_argument("--tol-low", type=float, default=0.01)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("classify", help="directional-routing verdict at one probe frequency")
    p.add_argument("config")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--high", type=float, default=0.4)
    p.add_argument("--low", type=float, default=0.05)
    p.set_defaults(func=_cmd_classify)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, InvalidParameter, AmbiguousRouting) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NonConvergence, SingularMatrix, UnstablePoint, EigenFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
