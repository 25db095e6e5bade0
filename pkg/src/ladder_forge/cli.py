"""Command line front end.

Subcommands cover the three layers of the package: the operator DSL
(``parse``, ``commutator``), the exact algebra checks (``verify-algebra``,
``casimir``), the factorization-family transforms (``transform``) and the
numerical Coulomb verification (``coulomb-verify``, ``coulomb-residual``).

Reports are emitted as text or JSON.  The JSON document always has the shape

    {"command": ..., "params": {...},
     "rows": [{"name", "expected", "actual", "residual", "pass"}, ...],
     "pass": bool}

with every numeric value rendered as a decimal string (exact rationals keep
their p/q form) so the output is stable across platforms.

Exit status: 0 when every check passed, 1 when a verification failed, 2 on
usage or expression errors.  The environment variable LADDER_FORGE_TOL
supplies a default tolerance for the numerical subcommands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import coulomb, factorizations, generators, opdsl
from .opdsl import OperatorLexError, OperatorSyntaxError

TOL_ENV = "LADDER_FORGE_TOL"


def _num(value):
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (Fraction, int)):
        return str(value)
    return f"{float(value):.12e}"


def _row(name, expected, actual, residual, passed) -> dict:
    return {
        "name": name,
        "expected": _num(expected),
        "actual": _num(actual),
        "residual": _num(residual),
        "pass": bool(passed),
    }


def _expr_row(name: str, rendered: str) -> dict:
    return {"name": name, "expected": None, "actual": rendered,
            "residual": None, "pass": True}


def _env_tol(default: float) -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise SystemExit(f"invalid {TOL_ENV}={raw!r}")


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(report, indent=2)
    else:
        lines = [f"{report['command']}"]
        for row in report["rows"]:
            parts = [row["name"]]
            for key in ("expected", "actual", "residual"):
                if row[key] is not None:
                    parts.append(f"{key}={row[key]}")
            parts.append("PASS" if row["pass"] else "FAIL")
            lines.append("  " + "  ".join(parts))
        lines.append("overall: " + ("PASS" if report["pass"] else "FAIL"))
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _finish(command: str, params: dict, rows: list[dict], args) -> int:
    overall = all(row["pass"] for row in rows)
    report = {"command": command, "params": params, "rows": rows, "pass": overall}
    _emit(report, args)
    return 0 if overall else 1


def _cmd_parse(args) -> int:
    expr = opdsl.parse(args.expression)
    return _finish("parse", {"expression": args.expression},
                   [_expr_row("normal-form", opdsl.render(expr))], args)


def _cmd_commutator(args) -> int:
    left = opdsl.parse(args.left)
    right = opdsl.parse(args.right)
    result = left * right - right * left
    rows = [_expr_row("commutator", opdsl.render(result))]
    return _finish("commutator", {"left": args.left, "right": args.right}, rows, args)


def _algebra_rows(which: str) -> list[dict]:
    rows = []
    if which == "su11":
        reports = generators.su11_reports()
    elif which == "weyl":
        reports = generators.weyl_reports()
    else:
        reports = []
    for rep in reports:
        rows.append(_row(rep.name, 0, opdsl.render(rep.residual), None, rep.passed))
    closure = generators.closure_report(which)
    expected = generators.expected_dimension(which)
    rows.append(_row(f"{which} closure dimension", expected, closure.dimension,
                     abs(closure.dimension - expected),
                     closure.closed and closure.dimension == expected))
    return rows


def _cmd_verify_algebra(args) -> int:
    rows = _algebra_rows(args.algebra)
    return _finish("verify-algebra", {"algebra": args.algebra}, rows, args)


def _cmd_casimir(args) -> int:
    rows = []
    for rep in generators.casimir_reports():
        rows.append(_row(rep.name, 0, opdsl.render(rep.residual), None, rep.passed))
    return _finish("casimir", {}, rows, args)


def _transform_rows(result) -> list[dict]:
    rows = [_row("target.family", None, result.target.family, None, True)]
    for key, value in sorted(vars(result.target).items()):
        rows.append(_row(f"target.{key}", None, value, None, True))
    for key, value in result.quantum_map.items():
        rows.append(_row(key, None, value, None, True))
    if result.epsilon is not None:
        rows.append(_row("epsilon", None, result.epsilon, None, True))
    rows.append(_row("scale_s", None, result.scale_s, None, True))
    return rows


def _cmd_transform(args) -> int:
    q = Fraction(args.q)
    params = {"route": args.route, "q": str(q), "l": args.l, "m": args.m}
    if args.route == "f2b":
        result = factorizations.f_to_b(q, args.l, args.m)
    elif args.route == "f2c":
        result = factorizations.f_to_c(q, args.l, args.m, args.eps)
        params["eps"] = args.eps
    else:
        first = factorizations.f_to_b(q, args.l, args.m)
        result = factorizations.b_to_c(
            first.target,
            first.quantum_map["lbar+cbar"],
            first.quantum_map["mbar+cbar"],
            args.eps,
        )
        params["eps"] = args.eps
    return _finish("transform", params, _transform_rows(result), args)


def _action_rows(reports, tol_c, tol_p, tol_a) -> list[dict]:
    rows = []
    for rep in reports:
        label = f"{rep.operator} {rep.source}"
        if rep.annihilation:
            rows.append(_row(label + " annihilated", 0.0, rep.measured,
                             rep.measured, rep.measured <= tol_a))
        else:
            residual = max(rep.coefficient_error, rep.profile_residual)
            rows.append(_row(label, rep.expected, rep.measured, residual,
                             rep.coefficient_error <= tol_c
                             and rep.profile_residual <= tol_p))
    return rows


def _cmd_coulomb_verify(args) -> int:
    tol_c = args.tol if args.tol is not None else _env_tol(1e-10)
    tol_p = args.tol if args.tol is not None else _env_tol(1e-8)
    tol_a = tol_c
    Z = Fraction(args.Z)
    sweeps = coulomb.sweep_su11(args.t_max, Z) + coulomb.sweep_weyl(
        args.mu_max, args.nu_max, Z=Z)
    rows = _action_rows(sweeps, tol_c, tol_p, tol_a)

    worst_norm = max(
        coulomb.normalization_residual(coulomb.state_tm(t, m, Z))
        for t in range(1, args.t_max + 1) for m in range(t)
    )
    rows.append(_row("normalization worst", 0.0, worst_norm, worst_norm,
                     worst_norm <= 1e-12))
    worst_cas = max(
        coulomb.casimir_residual(coulomb.state_tm(t, m, Z))
        for t in range(1, args.t_max + 1) for m in range(t)
    )
    rows.append(_row("casimir worst", 0.0, worst_cas, worst_cas, worst_cas <= tol_p))
    ident = coulomb.profile_identity_residual(Z)
    rows.append(_row("labelings agree on ground state", 0.0, ident, ident,
                     ident <= tol_p))

    shift_ok = True
    for rep in sweeps:
        if rep.annihilation:
            continue
        cs = coulomb.charge_shift(coulomb.make_state(rep.family, rep.source, Z),
                                  rep.operator)
        shift_ok = shift_ok and cs.gamma_invariant and cs.energy_invariant
    rows.append(_row("gamma and energy invariant under charge shift",
                     True, shift_ok, None, shift_ok))

    params = {"Z": str(Z), "t_max": args.t_max, "mu_max": args.mu_max,
              "nu_max": args.nu_max,
              "tol": _num(args.tol) if args.tol is not None else None}
    return _finish("coulomb-verify", params, rows, args)


def _cmd_coulomb_residual(args) -> int:
    tol = args.tol if args.tol is not None else _env_tol(1e-8)
    Z = Fraction(args.Z)
    state = coulomb.state_tm(args.n, args.L, Z)
    resid = coulomb.schrodinger_residual(state)
    control = coulomb.schrodinger_residual(state, lambda_shift=args.shift)
    norm = coulomb.normalization_residual(state)
    rows = [
        _row("schrodinger residual", 0.0, resid, resid, resid <= tol),
        _row("detuned control", args.shift, control, abs(control - args.shift),
             control >= 1e-2),
        _row("normalization", 0.0, norm, norm, norm <= 1e-12),
    ]
    if args.dump:
        nodes, _ = coulomb.gauss_laguerre(coulomb.DEFAULT_QUAD_ORDER)
        psi = state.radial(nodes / float(state.gamma))
        with open(args.dump, "w") as fh:
            fh.write("rho,psi\n")
            for rho, value in zip(nodes, psi):
                fh.write(f"{rho:.16e},{value:.16e}\n")
    params = {"Z": str(Z), "n": args.n, "L": args.L, "shift": _num(args.shift)}
    return _finish("coulomb-residual", params, rows, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladder-forge",
        description="exact ladder-operator algebra with numerical verification",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", metavar="PATH", help="write the report to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="normal-order an operator expression")
    p.add_argument("expression")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("commutator", help="commutator of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_commutator)

    p = sub.add_parser("verify-algebra", help="commutation table and closure")
    p.add_argument("algebra", choices=("su11", "weyl", "sp4"))
    p.set_defaults(func=_cmd_verify_algebra)

    p = sub.add_parser("casimir", help="quadratic invariant identities")
    p.set_defaults(func=_cmd_casimir)

    p = sub.add_parser("transform", help="map between factorization families")
    p.add_argument("route", choices=("f2b", "f2c", "b2c"))
    p.add_argument("--q", required=True, help="rational coupling, e.g. -3 or -3/2")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(1, -1), default=1)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("coulomb-verify", help="ladder actions on bound states")
    p.add_argument("--Z", default="1", help="rational charge")
    p.add_argument("--t-max", type=int, default=6, dest="t_max")
    p.add_argument("--mu-max", type=int, default=5, dest="mu_max")
    p.add_argument("--nu-max", type=int, default=7, dest="nu_max")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=_cmd_coulomb_verify)

    p = sub.add_parser("coulomb-residual", help="radial equation residual")
    p.add_argument("--Z", default="1", help="rational charge")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--shift", type=float, default=0.1,
                   help="eigenvalue detuning for the negative control")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--dump", metavar="PATH", help="write rho,psi samples as CSV")
    p.set_defaults(func=_cmd_coulomb_residual)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OperatorLexError, OperatorSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
