"""Command-line front end: JSON measures in, CSV/JSON artifacts out.

Subcommands
-----------
``solve-periodic``
    periodic measure JSON -> piecewise Hamiltonian CSV (``t_lo,t_hi,h11,h12,h22``)
``solve-atomic``
    Lebesgue-plus-atoms line measure JSON -> sampled Hamiltonian CSV
``dual``
    measure JSON -> dual measure JSON (moment form for periodic input,
    rational-density form for line input)
``direct-eval``
    Hamiltonian CSV -> spectral density or matrizant entries on a grid (CSV)
``verify``
    measure JSON + Hamiltonian CSV -> round-trip moment report (JSON)
``opuc-check``
    periodic measure JSON -> table comparing the Toeplitz and orthogonal
    polynomial recoveries of the diagonal sequence (JSON)
``diagnose-pw``
    measure JSON -> windowed sampling-measure verdict (JSON)

Every command reads ``--input`` and writes ``--output`` atomically; the
optional ``--figure PATH`` renders a matplotlib figure next to the delimited
output.  Grids are given as ``start:stop:count`` and windows as ``"LO,HI"``.

Exit status: 0 on success, 2 on validation or usage errors (including
malformed JSON, reported with line and column), 3 on numerical failures
(ill-posed systems, quadrature accuracy loss, consistency mismatches --
mismatch messages always print both conflicting values).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .atomic import hamiltonian_from_atomic
from .direct import matrizant, roundtrip_residual, spectral_density
from .errors import ConsistencyError, NumericalError, ValidationError
from .hamiltonian import (
    PiecewiseHamiltonian,
    SampledHamiltonian,
    read_hamiltonian_csv,
    write_text_atomic,
)
from .measures import (
    LineMeasure,
    PeriodicMeasure,
    PeriodicMomentMeasure,
    dual_measure,
    periodic_moments,
    pw_diagnostic,
)
from .opuc import h_via_onp, szego_basis
from .periodic import hamiltonian_from_periodic, hg_sequences
from .schema import dumps_measure, loads_measure

__all__ = ["main"]

_FMT = "%.17g"


# ── small parsing helpers ─────────────────────────────────────────────────


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None


def _load_measure(path: str):
    return loads_measure(_read_text(path))


def _load_piecewise(path: str) -> PiecewiseHamiltonian:
    ham = read_hamiltonian_csv(_read_text(path))
    if isinstance(ham, SampledHamiltonian):
        ham = ham.as_piecewise()
    return ham


def parse_grid(spec: str) -> np.ndarray:
    """``"start:stop:count"`` -> inclusive linspace."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid spec {spec!r} is not 'start:stop:count'")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValidationError(f"grid spec {spec!r}: {exc}") from None
    if count < 2 or stop <= start:
        raise ValidationError(
            f"grid spec {spec!r} needs stop > start and count >= 2"
        )
    return np.linspace(start, stop, count)


def parse_window(spec: str) -> tuple[float, float]:
    """``"LO,HI"`` -> (lo, hi) with lo < hi."""
    parts = spec.split(",")
    if len(parts) != 2:
        raise ValidationError(f"window {spec!r} is not 'LO,HI'")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValidationError(f"window {spec!r}: {exc}") from None
    if hi <= lo:
        raise ValidationError(f"window {spec!r} needs HI > LO")
    return lo, hi


def _write_json(path: str, obj) -> None:
    write_text_atomic(path, json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _csv_table(header: list[str], columns: list[np.ndarray]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow(_FMT % v for v in row)
    return buf.getvalue()


def _pair(value: complex) -> list[float]:
    value = complex(value)
    return [value.real, value.imag]


# ── subcommand handlers ───────────────────────────────────────────────────


def _cmd_solve_periodic(args) -> int:
    measure = _load_measure(args.input)
    if not isinstance(measure, (PeriodicMeasure, PeriodicMomentMeasure)):
        raise ValidationError("solve-periodic expects a periodic measure")
    ham = hamiltonian_from_periodic(
        measure, args.steps, gauge_k=args.gauge_k, crosscheck=args.crosscheck
    )
    ham.write_csv(args.output)
    if args.figure:
        from .plots import hamiltonian_figure

        hamiltonian_figure(ham, args.figure, title="inverse solve (periodic)")
    return 0


def _cmd_solve_atomic(args) -> int:
    measure = _load_measure(args.input)
    if not isinstance(measure, LineMeasure):
        raise ValidationError("solve-atomic expects a line measure")
    grid = parse_grid(args.grid)
    ham = hamiltonian_from_atomic(measure, grid, gauge_k=args.gauge_k)
    ham.write_csv(args.output)
    if args.figure:
        from .plots import hamiltonian_figure

        hamiltonian_figure(ham, args.figure, title="inverse solve (soliton)")
    return 0


def _cmd_dual(args) -> int:
    measure = _load_measure(args.input)
    dual = dual_measure(
        measure, b=args.b, max_index=args.moment_order, tol=args.tol
    )
    write_text_atomic(args.output, dumps_measure(dual))
    return 0


def _cmd_direct_eval(args) -> int:
    ham = _load_piecewise(args.input)
    t = ham.total_time if args.t is None else args.t
    x = parse_grid(args.grid)
    if args.quantity == "density":
        vals = spectral_density(ham, t, x, rescale=args.rescale)
        write_text_atomic(args.output, _csv_table(["x", "density"], [x, vals]))
        if args.figure:
            from .plots import density_figure

            density_figure(x, vals, args.figure, title=f"density at t={t:g}")
    else:
        m = matrizant(ham, t, x)
        cols = {"A": m.A, "B": m.B, "C": m.C, "D": m.D}
        write_text_atomic(
            args.output,
            _csv_table(
                ["x", "A", "B", "C", "D"],
                [x] + [np.real(cols[k]) for k in ("A", "B", "C", "D")],
            ),
        )
        if args.figure:
            from .plots import matrizant_figure

            matrizant_figure(x, cols, args.figure, title=f"matrizant at t={t:g}")
    return 0


def _cmd_verify(args) -> int:
    measure = _load_measure(args.input)
    ham = _load_piecewise(args.hamiltonian)
    t = ham.total_time if args.chain_time is None else args.chain_time
    report = roundtrip_residual(
        measure,
        ham,
        t,
        max_index=args.moment_order,
        window_periods=args.periods,
    )
    passed = report.max_residual < args.tol
    doc = {
        "chain_time": report.t,
        "window": list(report.window),
        "moments": [
            {
                "k": k,
                "estimate": _pair(e),
                "reference": _pair(r),
                "residual": res,
            }
            for k, (e, r, res) in enumerate(
                zip(report.estimates, report.references, report.residuals)
            )
        ],
        "max_residual": report.max_residual,
        "tolerance": args.tol,
        "pass": passed,
    }
    _write_json(args.output, doc)
    if args.figure:
        from .plots import residual_figure

        residual_figure(
            range(len(report.residuals)), report.residuals, args.tol, args.figure
        )
    if not passed:
        k = int(np.argmax(report.residuals))
        raise ConsistencyError(
            f"round-trip moment {k} mismatch: estimate {report.estimates[k]} "
            f"vs reference {report.references[k]} "
            f"(|diff| {report.residuals[k]:.6g} > tolerance {args.tol:g})"
        )
    return 0


def _cmd_opuc_check(args) -> int:
    measure = _load_measure(args.input)
    if not isinstance(measure, (PeriodicMeasure, PeriodicMomentMeasure)):
        raise ValidationError("opuc-check expects a periodic measure")
    h_toe, g_toe = hg_sequences(measure, args.steps)
    gamma = periodic_moments(measure, args.steps)
    basis = szego_basis(gamma, args.steps)
    rows = []
    for n in range(args.steps + 1):
        h_onp = h_via_onp(basis, n)
        rows.append(
            {
                "n": n,
                "h_toeplitz": float(h_toe[n]),
                "h_opuc": float(h_onp),
                "abs_diff": abs(float(h_toe[n]) - float(h_onp)),
            }
        )
    worst = max(rows, key=lambda r: r["abs_diff"])
    doc = {
        "rows": rows,
        "max_abs_diff": worst["abs_diff"],
        "tolerance": args.tol,
        "pass": worst["abs_diff"] < args.tol,
    }
    _write_json(args.output, doc)
    if args.figure:
        from .plots import opuc_figure

        opuc_figure(h_toe, g_toe, args.figure)
    if not doc["pass"]:
        raise ConsistencyError(
            f"step {worst['n']}: Toeplitz value {worst['h_toeplitz']!r} vs "
            f"orthogonal-polynomial value {worst['h_opuc']!r} "
            f"(|diff| {worst['abs_diff']:.6g} > tolerance {args.tol:g})"
        )
    return 0


def _cmd_diagnose_pw(args) -> int:
    measure = _load_measure(args.input)
    window = parse_window(args.window)
    report = pw_diagnostic(
        measure,
        window,
        args.t,
        length=args.interval_length,
        delta=args.delta,
        unit_mass_bound=args.unit_mass_bound,
    )
    doc = {
        "window": list(report.window),
        "t": args.t,
        "interval_length": args.interval_length,
        "delta": args.delta,
        "sup_unit_mass": report.sup_unit_mass,
        "min_capacity": report.min_capacity,
        "capacity_demand": report.capacity_demand,
        "verdict": report.verdict,
        "capacities": [[s, c] for s, c in report.capacities],
    }
    _write_json(args.output, doc)
    return 0


# ── parser ────────────────────────────────────────────────────────────────


def _add_io(p, hamiltonian_input: bool = False) -> None:
    p.add_argument(
        "--input",
        required=True,
        help="Hamiltonian CSV" if hamiltonian_input else "measure JSON",
    )
    p.add_argument("--output", required=True, help="output file (written atomically)")


def _add_figure(p) -> None:
    p.add_argument(
        "--figure",
        default=None,
        metavar="PATH",
        help="also render a matplotlib figure to PATH",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canham",
        description="Inverse and direct spectral problems for 2x2 canonical "
        "Hamiltonian systems.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser(
        "solve-periodic",
        help="inverse solve for a periodic measure (Toeplitz path)",
    )
    _add_io(p)
    p.add_argument("--steps", type=int, default=8, help="number of blocks (default 8)")
    p.add_argument(
        "--gauge-k",
        type=float,
        default=0.0,
        help="off-diagonal gauge shift k (default 0)",
    )
    p.add_argument(
        "--crosscheck",
        action="store_true",
        help="verify h22 against the dual measure's diagonal (even measures)",
    )
    _add_figure(p)
    p.set_defaults(handler=_cmd_solve_periodic)

    p = sub.add_parser(
        "solve-atomic",
        help="inverse solve for a Lebesgue-plus-atoms line measure",
    )
    _add_io(p)
    p.add_argument(
        "--grid",
        default="0:10:201",
        help="time grid start:stop:count (default 0:10:201)",
    )
    p.add_argument("--gauge-k", type=float, default=0.0, help="gauge shift (default 0)")
    _add_figure(p)
    p.set_defaults(handler=_cmd_solve_atomic)

    p = sub.add_parser("dual", help="compute the Clark-type dual measure")
    _add_io(p)
    p.add_argument("--b", type=float, default=0.0, help="dual parameter (default 0)")
    p.add_argument(
        "--moment-order",
        type=int,
        default=16,
        help="highest dual moment to report for periodic input (default 16)",
    )
    p.add_argument(
        "--tol",
        type=float,
        default=1e-9,
        help="quadrature height-consistency tolerance (default 1e-9)",
    )
    p.set_defaults(handler=_cmd_dual)

    p = sub.add_parser(
        "direct-eval",
        help="evaluate spectral density or matrizant entries on a grid",
    )
    _add_io(p, hamiltonian_input=True)
    p.add_argument(
        "--grid",
        default="-40:40:1601",
        help="spectral grid start:stop:count (default -40:40:1601)",
    )
    p.add_argument(
        "--t",
        type=float,
        default=None,
        help="chain time (default: full length of the Hamiltonian)",
    )
    p.add_argument(
        "--quantity",
        choices=("density", "matrizant"),
        default="density",
        help="what to tabulate (default density)",
    )
    p.add_argument(
        "--rescale",
        action="store_true",
        help="use the diagonally rescaled Hermite-Biehler function",
    )
    _add_figure(p)
    p.set_defaults(handler=_cmd_direct_eval)

    p = sub.add_parser(
        "verify",
        help="round-trip a measure through its Hamiltonian's representing measure",
    )
    _add_io(p)
    p.add_argument(
        "--hamiltonian", required=True, help="Hamiltonian CSV to verify against"
    )
    p.add_argument(
        "--chain-time",
        type=float,
        default=None,
        help="evaluation time (default: full chain length)",
    )
    p.add_argument(
        "--moment-order",
        type=int,
        default=3,
        help="compare moments 0..K (default 3)",
    )
    p.add_argument(
        "--periods",
        type=int,
        default=12,
        help="averaging half-window in units of pi (default 12)",
    )
    p.add_argument(
        "--tol",
        type=float,
        default=5e-2,
        help="residual threshold for pass/fail (default 5e-2)",
    )
    _add_figure(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser(
        "opuc-check",
        help="compare Toeplitz and orthogonal-polynomial diagonal recoveries",
    )
    _add_io(p)
    p.add_argument("--steps", type=int, default=8, help="steps to compare (default 8)")
    p.add_argument(
        "--tol",
        type=float,
        default=1e-8,
        help="allowed |difference| per step (default 1e-8)",
    )
    _add_figure(p)
    p.set_defaults(handler=_cmd_opuc_check)

    p = sub.add_parser(
        "diagnose-pw",
        help="windowed check of the sampling-measure conditions",
    )
    _add_io(p)
    p.add_argument(
        "--window",
        default="-60,60",
        help='examination window "LO,HI" (default -60,60)',
    )
    p.add_argument("--t", type=float, default=1.0, help="sampling rate t (default 1)")
    p.add_argument(
        "--interval-length",
        type=float,
        default=10.0,
        help="test interval length (default 10)",
    )
    p.add_argument(
        "--delta", type=float, default=0.4, help="massive-interval delta (default 0.4)"
    )
    p.add_argument(
        "--unit-mass-bound",
        type=float,
        default=None,
        help="explicit bound for condition (i); unbounded if omitted",
    )
    p.set_defaults(handler=_cmd_diagnose_pw)

    return parser


# Flags whose values legitimately begin with "-" (negative grid starts,
# negative window edges).  argparse would read such a value as an option
# string, so the space-separated form is merged into "--flag=value" first.
_DASH_VALUE_FLAGS = ("--grid", "--window")


def _merge_dashed_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_dashed_values(list(argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
