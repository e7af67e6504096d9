"""Batch command-line front end.

Eight subcommands drive the library end to end: ``transfer`` expands
singular transform data into a time-domain main term, ``classify`` runs
the boundary-point detector on a named fixture, ``taubcheck`` measures
one-sided regularity, ``wi`` and ``audit`` run the density and
exceptional-set experiments, ``powerseries`` handles coefficient
sequences, ``constants`` prints the kernel integral table, and ``suite``
executes the acceptance registry.

Every command writes its reports under ``--out`` (JSON plus CSV, SVG
figures alongside) and prints a short summary, or the full JSON document
with ``--json``.  Outputs are deterministic given flags and fixtures; no
timestamp or wall-clock value is ever written to a file.

Exit codes: 0 success, 1 failed acceptance criterion, 2 usage or input
error.  Input problems (unknown fixture, malformed spec JSON, a window
too short for the requested bandwidth) are reported as a structured
``{"error": {...}}`` object on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import acceptance, experiments, plots, taubcheck
from .asymptotics import (
    AsymptoticTerm,
    SingularPart,
    expansion_to_json,
    singular_part_from_json,
    singular_part_to_json,
    transfer_expansion,
)
from .gallery import gallery_entry, gallery_names
from .quadrature import cumulative_simpson
from .reporting import dumps_json, to_jsonable, write_csv, write_json
from .signal import (
    InsufficientWindowError,
    SampledFunction,
    StieltjesFunction,
    classify_boundary_point,
)

__all__ = ["main", "build_parser"]


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

def _outpath(args, filename: str) -> str:
    return os.path.join(args.out, filename)


def _emit(args, document: dict, summary_lines: Sequence[str]) -> None:
    if args.json:
        sys.stdout.write(dumps_json(document))
    else:
        for line in summary_lines:
            print(line)


def _term_label(term: AsymptoticTerm) -> str:
    """Human-readable factor list for one asymptotic term."""
    parts = []
    c = complex(term.coeff)
    parts.append(repr(c.real) if c.imag == 0.0 else f"({c.real!r}{c.imag:+}j)")
    if term.beta != 0.0:
        parts.append(f"x^{term.beta}")
    if term.logpow:
        parts.append("log x" if term.logpow == 1 else f"log^{term.logpow} x")
    if term.freq:
        parts.append(f"e^({term.freq}ix)")
    if term.rate:
        parts.append(f"e^({term.rate}x)")
    return " * ".join(parts)


def _load_fixture(args) -> tuple[str, SampledFunction]:
    entry = gallery_entry(args.fixture)
    f = entry.sample(grid_step=args.dx, xmax=args.xmax)
    return entry.name, f


def _downsample(x: np.ndarray, y: np.ndarray, limit: int = 2000):
    step = max(1, len(x) // limit)
    return x[::step], y[::step]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_transfer(args) -> int:
    with open(args.data_path) as fh:
        raw = json.load(fh)
    sp = singular_part_from_json(raw)
    expansion = transfer_expansion(sp)

    xmax = 50.0 if args.xmax is None else args.xmax
    dx = 0.01 if args.dx is None else args.dx
    x = np.arange(int(round(xmax / dx)) + 1) * dx
    values = expansion.evaluate(x, log_plus=True)

    document = {
        "singular_part": singular_part_to_json(sp),
        "expansion": expansion_to_json(expansion),
        "terms_pretty": [_term_label(t) for t in expansion.terms],
    }
    write_json(_outpath(args, "transfer_expansion.json"), document)
    write_csv(_outpath(args, "transfer_main_term.csv"), ("x", "re", "im"),
              zip(x, values.real, values.imag))
    series = {"Re main term": values.real}
    if float(np.abs(values.imag).max(initial=0.0)) > 1e-12:
        series["Im main term"] = values.imag
    plots.line_plot(_outpath(args, "transfer_main_term.svg"), x, series,
                    xlabel="x", ylabel="main term",
                    title="transfer of the singular data")

    lines = ["main term: " + (" + ".join(_term_label(t) for t in expansion.terms)
                              or "0")]
    lines += [f"dropped: {msg}" for msg in expansion.dropped]
    lines.append(f"remainder class: {expansion.remainder.value}")
    _emit(args, document, lines)
    return 0


def cmd_classify(args) -> int:
    name, f = _load_fixture(args)
    report = classify_boundary_point(f, t0=args.t0, bandwidth=args.lam)
    document = {
        "fixture": name,
        "grid_step": f.grid_step,
        "xmax": f.xmax,
        "classification": to_jsonable(report),
    }
    write_json(_outpath(args, f"classify_{name}.json"), document)
    h = [row[0] for row in report.avg_stats]
    mags = [row[1] for row in report.avg_stats]
    write_csv(_outpath(args, f"classify_{name}_averages.csv"),
              ("h", "abs_average"), zip(h, mags))
    plots.decay_plot(_outpath(args, f"classify_{name}.svg"), h, mags,
                     report.floor,
                     title=f"{name}: t0 = {args.t0}, bandwidth = {args.lam}")
    _emit(args, document, [
        f"{name} at t0 = {args.t0}, bandwidth = {args.lam}: "
        f"{report.verdict.value} (trend {report.trend:+.2f}, "
        f"floor {report.floor:.2e})",
    ])
    return 0


def cmd_taubcheck(args) -> int:
    name, f = _load_fixture(args)
    real = SampledFunction(grid_step=f.grid_step, xmax=f.xmax,
                           samples=f.samples.real.astype(complex))
    eps = 0.1 if args.tol is None else args.tol

    deltas = list(np.linspace(0.1, 2.0, 20))
    modulus = taubcheck.oscillation_modulus(real, deltas)
    slow_holds, slow_delta = taubcheck.check_slowly_decreasing(real, eps=eps)
    bounded_m = taubcheck.check_boundedly_decreasing(real, delta=1.0)
    x_grid = [0.0, 0.25 * real.xmax, 0.5 * real.xmax, 0.75 * real.xmax]
    very = taubcheck.check_very_slowly_decreasing(real, x_grid)
    t2_holds = taubcheck.check_T2_condition(real, beta=1.0)

    document = {
        "fixture": name,
        "note": "checks apply to the real part of the fixture",
        "oscillation_modulus": to_jsonable(modulus),
        "slope_sup": modulus.slope_sup,
        "slowly_decreasing": {"eps": eps, "holds": slow_holds,
                              "delta": slow_delta},
        "boundedly_decreasing_M": bounded_m,
        "very_slowly_decreasing": to_jsonable(very),
        "T2": {"beta": 1.0, "holds": t2_holds},
    }
    write_json(_outpath(args, f"taubcheck_{name}.json"), document)
    write_csv(_outpath(args, f"taubcheck_{name}_modulus.csv"),
              ("delta", "psi"), zip(modulus.deltas, modulus.psi_values))
    plots.modulus_plot(_outpath(args, f"taubcheck_{name}.svg"),
                       modulus.deltas, modulus.psi_values,
                       title=f"{name}: oscillation modulus")
    _emit(args, document, [
        f"{name}: slowly decreasing (eps={eps}): {slow_holds} "
        f"(delta={slow_delta:.4g})",
        f"{name}: boundedly decreasing M = {bounded_m:.4g}",
        f"{name}: very slowly decreasing: {very.holds}",
        f"{name}: T2 (beta=1): {t2_holds}",
    ])
    return 0


def _wi_fixture(kind: str, xmax: float, dx: float):
    """The three density experiments: continuous, lattice, empty."""
    if kind == "exp":
        density = SampledFunction.from_function(
            lambda x: np.exp(x).astype(complex), grid_step=dx, xmax=xmax)
        S = StieltjesFunction(jump_points=(), jump_masses=(), ac_part=density)
        sp = SingularPart(wi_alpha=1.0, wi_r0=1.0)
    elif kind == "jumps":
        points = tuple(float(n) for n in range(1, int(xmax)))
        masses = tuple(float(np.exp(n)) for n in range(1, int(xmax)))
        zero = SampledFunction.from_function(
            lambda x: np.zeros_like(x, dtype=complex), grid_step=dx, xmax=xmax)
        S = StieltjesFunction(jump_points=points, jump_masses=masses,
                              ac_part=zero)
        sp = SingularPart(wi_alpha=1.0, wi_r0=1.0)
    elif kind == "zero":
        zero = SampledFunction.from_function(
            lambda x: np.zeros_like(x, dtype=complex), grid_step=dx, xmax=xmax)
        S = StieltjesFunction(jump_points=(), jump_masses=(), ac_part=zero)
        sp = SingularPart(wi_alpha=1.0, wi_r0=0.0)
    else:
        raise ValueError(f"unknown density fixture {kind!r}")
    return S, sp


def cmd_wi(args) -> int:
    # 60 keeps every dyadic deviation window past the first lattice jump,
    # so the pre-asymptotic transient near x = 0 never enters the verdict.
    xmax = 60.0 if args.xmax is None else args.xmax
    dx = 0.005 if args.dx is None else args.dx
    S, sp = _wi_fixture(args.fixture, xmax, dx)
    probes = tuple(args.probe) if args.probe else (1.0, 2.0 * np.pi)
    report = experiments.wiener_ikehara_experiment(S, sp, probe_freqs=probes)

    document = {"fixture": args.fixture, "xmax": xmax, "grid_step": dx,
                "report": to_jsonable(report)}
    write_json(_outpath(args, f"wi_{args.fixture}.json"), document)
    write_csv(_outpath(args, f"wi_{args.fixture}_probes.csv"),
              ("t", "sup", "growth_exponent", "bounded"),
              report.partial_integrals)
    windows = np.arange(1, len(report.deviation_window_sups) + 1)
    plots.line_plot(_outpath(args, f"wi_{args.fixture}.svg"),
                    windows,
                    {"window sup": np.maximum(report.deviation_window_sups,
                                              1e-300)},
                    xlabel="dyadic window index",
                    ylabel="sup |normalized deviation|",
                    title=f"{args.fixture}: deviation from the forced main term",
                    logy=True)
    _emit(args, document, [
        f"{args.fixture}: deviation verdict {report.deviation_verdict.value} "
        f"(final deviation {report.deviation_last:.3e})",
    ] + [
        f"probe t = {t:g}: sup {sup:.3e}, growth exponent {g:+.2f}, "
        f"bounded: {b}" for t, sup, g, b in report.partial_integrals
    ])
    return 0


def cmd_audit(args) -> int:
    name, f = _load_fixture(args)
    if args.point:
        points = tuple(args.point)
    else:
        points = (1.0,) if name.endswith("tone") else (0.0,)
    report = experiments.exceptional_set_audit(
        f, E=points, lam=args.lam,
        probe_points=tuple(args.probe) if args.probe else None)

    document = {"fixture": name, "E": list(points),
                "report": to_jsonable(report)}
    write_json(_outpath(args, f"audit_{name}.json"), document)
    write_csv(_outpath(args, f"audit_{name}_points.csv"),
              ("t", "M_t", "growth_exponent", "bounded", "verdict"),
              [(p.t, p.M_t, p.growth_exponent, p.bounded, p.verdict.value)
               for p in report.points])

    series = {}
    for p in report.points:
        integrand = f.samples * np.exp(-1j * p.t * f.x)
        partial = np.abs(cumulative_simpson(integrand, f.grid_step))
        xs, ys = _downsample(f.x, partial)
        series[f"t = {p.t:g}"] = ys
    plots.line_plot(_outpath(args, f"audit_{name}.svg"), xs, series,
                    xlabel="x", ylabel="|partial spectral integral|",
                    title=f"{name}: partial integrals on the exceptional set")
    _emit(args, document, [
        f"{name}: hypothesis II (bounded partial integrals): "
        f"{report.hypothesis_II_ok}",
    ] + [
        f"  t = {p.t:g}: M_t = {p.M_t:.4g}, growth exponent "
        f"{p.growth_exponent:+.2f}, verdict {p.verdict.value}"
        for p in report.points
    ] + [
        f"  probe t = {t:g}: {v.value}" for t, v in report.probe_verdicts
    ] + [
        f"{name}: conclusion surrogate holds: {report.conclusion_holds}",
    ])
    return 0


def _coefficients(kind: str, n_terms: int) -> np.ndarray:
    n = np.arange(n_terms, dtype=float)
    if kind == "harmonic":
        return 1.0 / (n + 1.0)
    if kind == "rotation":
        return np.exp(-1.3j * n)
    if kind == "zero":
        return np.zeros(n_terms)
    raise ValueError(f"unknown coefficient sequence {kind!r}")


def cmd_powerseries(args) -> int:
    coeffs = experiments.CoefficientSequence(
        _coefficients(args.sequence, args.terms))
    if args.angle:
        angles = tuple(args.angle)
    else:
        angles = {"harmonic": (float(np.pi),), "rotation": (1.3,),
                  "zero": ()}[args.sequence]
    thetas = tuple(args.theta) if args.theta else angles
    report = experiments.power_series_suite(coeffs, theta_probes=thetas,
                                            E_angles=angles)

    document = {"sequence": args.sequence, "terms": args.terms,
                "report": to_jsonable(report)}
    write_json(_outpath(args, f"powerseries_{args.sequence}.json"), document)
    rows = []
    for theta, samples in report.radial:
        for r, value in samples:
            z = complex(value)
            rows.append((theta, r, z.real, z.imag))
    write_csv(_outpath(args, f"powerseries_{args.sequence}_radial.csv"),
              ("theta", "r", "re", "im"), rows)
    if report.radial:
        series = {
            f"theta = {theta:g}": [abs(complex(v)) for _, v in samples]
            for theta, samples in report.radial
        }
        rgrid = [r for r, _ in report.radial[0][1]]
        plots.line_plot(_outpath(args, f"powerseries_{args.sequence}.svg"),
                        rgrid, series, xlabel="r", ylabel="|F(r e^(i theta))|",
                        title=f"{args.sequence}: radial boundary approach",
                        logy=True)

    lines = [f"{args.sequence}: coefficient verdict "
             f"{report.coefficient_verdict.value}"]
    lines += [
        f"angle {theta:g}: sup |partial sums| = {sup:.4g}, growth exponent "
        f"{g:+.2f}, bounded: {b}"
        for theta, sup, g, b in report.partial_sums
    ]
    lines += [
        f"angle {theta:g}: converged: {conv}, Abel value {complex(abel):.6g}"
        for theta, conv, abel in report.convergence
    ]
    _emit(args, document, lines)
    return 0


def cmd_constants(args) -> int:
    experiments.fejer_integral_table.cache_clear()
    table = experiments.fejer_integral_table()
    values = [("i1", "integral_0^4 phi", table.i1),
              ("i2", "integral_4^inf phi", table.i2),
              ("i3", "integral_0^4 (2-x) phi", table.i3),
              ("i4", "integral_4^inf 2 phi", table.i4)]
    if args.tol is not None:
        worst = max(table.error_bounds)
        if worst > args.tol:
            raise ValueError(
                f"certified error bounds reach {worst:.2e}, above the "
                f"requested tolerance {args.tol:g}; the improper-tail "
                f"remainder caps the certificate near 1e-7")
    document = {"integrals": {k: v for k, _, v in values},
                "error_bounds": list(table.error_bounds)}
    write_json(_outpath(args, "constants.json"), document)
    write_csv(_outpath(args, "constants.csv"),
              ("name", "definition", "value", "error_bound"),
              [(k, d, v, b) for (k, d, v), b in zip(values,
                                                    table.error_bounds)])
    _emit(args, document, [
        f"{k}  {d:24s} = {v:.6f}  (certified error <= {b:.1e})"
        for (k, d, v), b in zip(values, table.error_bounds)
    ])
    return 0


def cmd_suite(args) -> int:
    results = acceptance.run_suite(args.filter)
    if not results:
        raise ValueError(f"no criterion matches filter {args.filter!r}")
    document = {
        "all_passed": all(r.passed for r in results),
        "criteria": [
            {"number": r.number, "slug": r.slug, "title": r.title,
             "passed": r.passed, "detail": r.detail,
             "runtime_limit_seconds": r.runtime_limit_seconds}
            for r in results
        ],
    }
    write_json(_outpath(args, "suite_results.json"), document)
    if args.json:
        sys.stdout.write(dumps_json(document))
    else:
        for r in results:
            print(acceptance.format_result_line(r))
        n_pass = sum(r.passed for r in results)
        print(f"{n_pass}/{len(results)} criteria passed")
    return 0 if document["all_passed"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=".", metavar="DIR",
                   help="directory for report files (default: current)")
    p.add_argument("--json", action="store_true",
                   help="print the full JSON document instead of a summary")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--xmax", type=float, default=None,
                   help="override the sampling window length")
    p.add_argument("--dx", type=float, default=None,
                   help="override the sampling step")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taulab",
        description="numerical laboratory for boundary behaviour of "
                    "Laplace transforms",
        epilog="exit codes: 0 success, 1 failed criterion, 2 usage or "
               "input error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transfer",
                       help="expand singular transform data into a main term")
    p.add_argument("data_path", help="JSON file with the singular-part data")
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("classify",
                       help="run the boundary-point detector on a fixture")
    p.add_argument("fixture", help=f"one of: {', '.join(gallery_names())}")
    p.add_argument("--t0", type=float, default=0.0,
                   help="boundary point to probe (default 0)")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5,
                   help="kernel bandwidth (default 0.5)")
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("taubcheck",
                       help="one-sided regularity checks on a fixture")
    p.add_argument("fixture", help=f"one of: {', '.join(gallery_names())}")
    p.add_argument("--tol", type=float, default=None,
                   help="eps for the slow-decrease check (default 0.1)")
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_taubcheck)

    p = sub.add_parser("wi", help="density deviation experiment")
    p.add_argument("--fixture", choices=("exp", "jumps", "zero"),
                   default="exp")
    p.add_argument("--probe", type=float, action="append", default=[],
                   help="probe frequency (repeatable)")
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_wi)

    p = sub.add_parser("audit", help="exceptional-set compensation audit")
    p.add_argument("fixture", help=f"one of: {', '.join(gallery_names())}")
    p.add_argument("--point", type=float, action="append", default=[],
                   help="exceptional frequency (repeatable)")
    p.add_argument("--probe", type=float, action="append", default=[],
                   help="off-set probe frequency (repeatable)")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5,
                   help="kernel bandwidth (default 0.5)")
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("powerseries", help="coefficient-sequence suite")
    p.add_argument("--sequence", choices=("harmonic", "rotation", "zero"),
                   default="harmonic")
    p.add_argument("--terms", type=int, default=100000, metavar="N",
                   help="number of coefficients (default 1e5)")
    p.add_argument("--angle", type=float, action="append", default=[],
                   help="boundary angle for partial sums (repeatable)")
    p.add_argument("--theta", type=float, action="append", default=[],
                   help="radial probe angle (repeatable)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_powerseries)

    p = sub.add_parser("constants", help="kernel integral table")
    p.add_argument("--tol", type=float, default=None,
                   help="require certified error bounds at or below this")
    _add_output_flags(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("suite", help="run the acceptance criteria")
    p.add_argument("--filter", default=None,
                   help="run only criteria whose slug or number matches")
    _add_output_flags(p)
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        payload = {"error": {"type": "JSONDecodeError",
                             "message": f"line {exc.lineno} column "
                                        f"{exc.colno}: {exc.msg}"}}
        print(json.dumps(payload, sort_keys=True))
        return 2
    except (InsufficientWindowError, ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        payload = {"error": {"type": type(exc).__name__,
                             "message": str(message)}}
        print(json.dumps(payload, sort_keys=True))
        return 2


if __name__ == "__main__":
    sys.exit(main())
