"""Command-line front end.

Numeric results go to stdout (or ``--out``) as JSON or CSV; a short human
summary goes to stderr. Exit codes: 0 success or passing verdict, 1 failing
verdict, 2 usage or configuration error, 3 numeric failure.

    cpn-toeplitz gram --n 2 --m 2
    cpn-toeplitz gamma --n 1 --m 2 --symbol "1/(1+rho2)"
    cpn-toeplitz toeplitz --n 1 --m 1 --symbol "z1/(1+rho2)"
    cpn-toeplitz commute --n 1 --m 1 --symbol "rho2/(1+rho2)" --symbol2 "z1/(1+rho2)"
    cpn-toeplitz project --n 1 --m 2 --symbol "abs(z1)^2"
    cpn-toeplitz orbit --radii 0.6,0.8 --grid 8
    cpn-toeplitz geomcheck --n 2 --seed 7
    cpn-toeplitz invariance --n 1 --symbol "re(z1)/(1+rho2)"
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import bergman, geometry, symexpr, toeplitz
from .errors import (
    ConvergenceError,
    EvaluationError,
    GeometryError,
    NotHermitianError,
    NotRadialError,
    ParamError,
    SymbolSyntaxError,
)
from .multiindex import SpaceParams, enumerate_indices
from .quadrature import DEFAULT_RADIAL_POINTS, QuadConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- serialization ------------------------------------------------------------


def _cplx(x) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def _cplx_matrix(M) -> list:
    return [[_cplx(v) for v in row] for row in np.asarray(M)]


def _fmt(x) -> str:
    # repr is the shortest string that round-trips to the same double
    return repr(float(x))


class Output:
    """Collects one JSON document or one CSV table for a subcommand."""

    def __init__(self, payload: dict, header: list, rows: list):
        self.payload = payload
        self.header = header
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2, allow_nan=False) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
        return buf.getvalue()


def _matrix_rows(M) -> list:
    M = np.asarray(M)
    return [
        [i, j, float(M[i, j].real), float(M[i, j].imag)]
        for i in range(M.shape[0])
        for j in range(M.shape[1])
    ]


# --- helpers --------------------------------------------------------------------


def _params(args) -> SpaceParams:
    if args.n is None or args.m is None:
        raise UsageError("--n and --m are required")
    return SpaceParams(args.n, args.m)


def _config(args) -> QuadConfig:
    return QuadConfig(args.radial_points, args.angular_points)


def _symbol(text, n: int, flag: str = "--symbol") -> symexpr.SymbolExpr:
    if text is None:
        raise UsageError(f"{flag} is required")
    return symexpr.parse(text, n)


def _header(args, params: SpaceParams, config: QuadConfig, toeplitz_grid: bool) -> dict:
    return {
        "command": args.command,
        "n": params.n,
        "m": params.m,
        "radial_points": config.radial_points,
        "angular_points": config.angular_for(params.m, toeplitz=toeplitz_grid),
    }


def _indices(params: SpaceParams) -> list:
    return [list(p) for p in enumerate_indices(params)]


def _say(message: str):
    print(message, file=sys.stderr)


# --- subcommands ----------------------------------------------------------------


def cmd_gram(args):
    params, config = _params(args), _config(args)
    tol = 1e-8 if args.tol is None else args.tol
    G = bergman.gram_matrix(params, config)
    deviation = float(np.max(np.abs(G - np.eye(len(G)))))
    passed = deviation <= tol
    payload = _header(args, params, config, True)
    payload.update(
        indices=_indices(params),
        matrix=_cplx_matrix(G),
        max_deviation=deviation,
        threshold=tol,
        passed=passed,
    )
    _say(f"gram n={params.n} m={params.m}: max|G - I| = {deviation:.3e} ({'pass' if passed else 'FAIL'})")
    return Output(payload, ["row", "col", "re", "im"], _matrix_rows(G)), EXIT_OK if passed else EXIT_FAIL


def cmd_gamma(args):
    params, config = _params(args), _config(args)
    a = _symbol(args.symbol, params.n)
    gamma = toeplitz.gamma_sequence(a, params, config, assume_radial=args.assume_radial, seed=args.seed)
    indices = enumerate_indices(params)
    payload = _header(args, params, config, False)
    payload.update(
        symbol=args.symbol,
        rows=[{"p": list(p), "gamma": _cplx(g)} for p, g in zip(indices, gamma.values)],
    )
    header = [f"p{j + 1}" for j in range(params.n)] + ["re", "im"]
    rows = [list(p) + [float(g.real), float(g.imag)] for p, g in zip(indices, gamma.values)]
    _say(f"gamma for {args.symbol!r}: {len(rows)} values")
    return Output(payload, header, rows), EXIT_OK


def cmd_toeplitz(args):
    params, config = _params(args), _config(args)
    a = _symbol(args.symbol, params.n)
    T = toeplitz.toeplitz_matrix(a, params, config)
    payload = _header(args, params, config, True)
    payload.update(
        symbol=args.symbol,
        radial=a.is_radial,
        indices=_indices(params),
        matrix=_cplx_matrix(T.entries),
        diagonality_defect=toeplitz.diagonality_defect(T),
        hermiticity_defect=toeplitz.hermiticity_defect(T),
        operator_norm=toeplitz.operator_norm(T),
        gamma_discrepancy=None,
    )
    if a.is_radial:
        gamma = toeplitz.gamma_sequence(a, params, config)
        payload["gamma_discrepancy"] = float(np.max(np.abs(np.diag(T.entries) - gamma.values)))
    _say(
        f"toeplitz {args.symbol!r}: diagonality defect {payload['diagonality_defect']:.3e}, "
        f"norm {payload['operator_norm']:.6g}"
    )
    return Output(payload, ["row", "col", "re", "im"], _matrix_rows(T.entries)), EXIT_OK


def cmd_commute(args):
    params, config = _params(args), _config(args)
    a = _symbol(args.symbol, params.n)
    b = _symbol(args.symbol2, params.n, "--symbol2")
    tol = 1e-9 if args.tol is None else args.tol
    C = toeplitz.commutator(toeplitz.toeplitz_matrix(a, params, config), toeplitz.toeplitz_matrix(b, params, config))
    norm = float(np.linalg.norm(C))
    commuting = norm <= tol
    payload = _header(args, params, config, True)
    payload.update(
        symbol=args.symbol,
        symbol2=args.symbol2,
        commutator=_cplx_matrix(C),
        frobenius_norm=norm,
        threshold=tol,
        verdict="commuting" if commuting else "not commuting",
    )
    _say(f"||[T_a, T_b]||_F = {norm:.3e}: {payload['verdict']}")
    return Output(payload, ["row", "col", "re", "im"], _matrix_rows(C)), EXIT_OK if commuting else EXIT_FAIL


def cmd_project(args):
    params, config = _params(args), _config(args)
    f = _symbol(args.symbol, params.n)
    coeffs = bergman.project(f, params, config)
    indices = enumerate_indices(params)
    payload = _header(args, params, config, False)
    payload.update(
        symbol=args.symbol,
        rows=[{"p": list(p), "c": _cplx(c)} for p, c in zip(indices, coeffs.values)],
    )
    header = [f"p{j + 1}" for j in range(params.n)] + ["re", "im"]
    rows = [list(p) + [float(c.real), float(c.imag)] for p, c in zip(indices, coeffs.values)]
    _say(f"projection of {args.symbol!r}: {len(rows)} coefficients")
    return Output(payload, header, rows), EXIT_OK


def _parse_radii(text):
    if text is None:
        raise UsageError("--radii is required")
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--radii must be comma-separated numbers, got {text!r}") from None


def cmd_orbit(args):
    spec = geometry.OrbitSpec(_parse_radii(args.radii))
    if args.n is not None and args.n != spec.n:
        raise UsageError(f"--n {args.n} does not match {len(spec.radii)} radii (n = {spec.n})")
    if args.grid < 1:
        raise UsageError("--grid must be >= 1")
    points = geometry.sample_orbit(spec, args.grid)
    payload = {
        "command": "orbit",
        "n": spec.n,
        "radii": list(spec.radii),
        "grid": args.grid,
        "points": [[_cplx(v) for v in p] for p in points],
    }
    header = [f"z{j + 1}_{part}" for j in range(spec.n) for part in ("re", "im")]
    rows = [[float(getattr(v, part)) for v in p for part in ("real", "imag")] for p in points]
    _say(f"orbit: {len(rows)} points")
    return Output(payload, header, rows), EXIT_OK


def cmd_geomcheck(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    tol = 1e-10 if args.tol is None else args.tol
    report = geometry.geometry_check(args.n, args.samples, args.seed)
    passed = report.lagrangian_defect <= tol and report.orthogonality_defect <= tol
    payload = {
        "command": "geomcheck",
        "n": report.n,
        "samples": report.samples,
        "seed": report.seed,
        "lagrangian_defect": report.lagrangian_defect,
        "orthogonality_defect": report.orthogonality_defect,
        "min_metric_eigenvalue": report.min_metric_eigenvalue,
        "threshold": tol,
        "passed": passed,
    }
    header = ["n", "samples", "seed", "lagrangian_defect", "orthogonality_defect"]
    rows = [[report.n, report.samples, report.seed, report.lagrangian_defect, report.orthogonality_defect]]
    _say(
        f"geomcheck n={report.n}: lagrangian {report.lagrangian_defect:.3e}, "
        f"orthogonality {report.orthogonality_defect:.3e} ({'pass' if passed else 'FAIL'})"
    )
    return Output(payload, header, rows), EXIT_OK if passed else EXIT_FAIL


def cmd_invariance(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    a = _symbol(args.symbol, args.n)
    tol = 1e-10 if args.tol is None else args.tol
    result = symexpr.check_torus_invariance(a, args.trials, args.seed, tol)
    payload = {
        "command": "invariance",
        "n": args.n,
        "symbol": args.symbol,
        "radial_flag": a.radial_flag.value,
        "trials": result.trials,
        "seed": args.seed,
        "threshold": tol,
        "max_deviation": result.max_deviation,
        "invariant": result.invariant,
    }
    header = ["symbol", "trials", "seed", "max_deviation", "invariant"]
    rows = [[args.symbol, result.trials, args.seed, result.max_deviation, str(result.invariant).lower()]]
    _say(f"invariance of {args.symbol!r}: max deviation {result.max_deviation:.3e}")
    return Output(payload, header, rows), EXIT_OK if result.invariant else EXIT_FAIL


COMMANDS = {
    "gram": (cmd_gram, "Gram matrix of the normalized monomial basis"),
    "gamma": (cmd_gamma, "eigenvalue sequence of a separately radial symbol"),
    "toeplitz": (cmd_toeplitz, "Toeplitz matrix and diagnostics"),
    "commute": (cmd_commute, "commutator of two Toeplitz operators"),
    "project": (cmd_project, "Bergman projection coefficients of a function"),
    "orbit": (cmd_orbit, "point cloud of a torus orbit in the chart"),
    "geomcheck": (cmd_geomcheck, "Lagrangian and frame orthogonality defects"),
    "invariance": (cmd_invariance, "numeric torus-invariance test of a symbol"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="complex dimension of CP^n")
    common.add_argument("--m", type=int, help="weight of the Bergman space")
    common.add_argument("--symbol", help="symbol or function in the DSL")
    common.add_argument("--symbol2", help="second symbol (commute)")
    common.add_argument("--radial-points", type=int, default=DEFAULT_RADIAL_POINTS)
    common.add_argument("--angular-points", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="verdict threshold")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="cpn-toeplitz",
        description="Toeplitz operators on the weighted Bergman spaces of CP^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "gamma":
            p.add_argument("--assume-radial", action="store_true", help="accept a symbol after a numeric invariance check")
        elif name == "orbit":
            p.add_argument("--radii", help="comma-separated r_0,...,r_n with unit norm")
            p.add_argument("--grid", type=int, default=8, help="angles per coordinate")
        elif name == "geomcheck":
            p.add_argument("--samples", type=int, default=100)
        elif name == "invariance":
            p.add_argument("--trials", type=int, default=200)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        output, status = handler(args)
    except (UsageError, ParamError, SymbolSyntaxError, GeometryError, NotRadialError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvaluationError, ConvergenceError, NotHermitianError, FloatingPointError) as exc:
        print(f"{parser.prog} {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = output.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
