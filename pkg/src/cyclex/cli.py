"""Command-line front end.

Exit codes: 0 success, 1 a check failed (or the requested object does not
exist), 2 the input could not be parsed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import detector
from .algebra import LinForm, X, Y
from .cycle import Existence, compute_cycle, psi, write_profile_csv
from .darboux import (
    check_top_cofactor,
    cofactor_of,
    divergence_identity,
    filiptsov_check,
    origin_lines_curve,
    rotation_family_curves,
)
from .errors import CyclexError, DegenerateCurve, DomainError, NotInvariant, ParseError
from .ode import ode_crosscheck
from .quadrature import QuadratureConfig
from .specfile import load_spec, parse_polynomial
from .systems import FILIPTSOV_A, algebraic_quintic, nonalgebraic_quintic
from .trig import SystemSpec, g_nonvanishing, to_polar, vanishing_directions

__all__ = ["main", "build_parser", "reproduce_checks"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _num(x: float) -> str:
    return format(float(x), ".12g")


def _config(flag: float | None, spec_tol: float | None = None) -> QuadratureConfig:
    """--tol, then CYCLEX_TOL, then the file's tol, then the default."""
    if flag is not None:
        return QuadratureConfig(abs_tol=flag)
    if os.environ.get("CYCLEX_TOL"):
        return QuadratureConfig.from_env()
    if spec_tol is not None:
        return QuadratureConfig(abs_tol=spec_tol)
    return QuadratureConfig()


# ---------------------------------------------------------------------------
# reproduce


def _v(tag: str) -> LinForm:
    return LinForm.var(tag)


def reproduce_checks(cfg: QuadratureConfig | None = None) -> tuple[list[dict], dict]:
    """Run the reference pipeline; returns ``(checks, values)``.

    Each check is ``{"name", "passed", "detail"}``; values collects the
    reported numbers and exact objects as strings.
    """
    cfg = cfg or QuadratureConfig()
    checks: list[dict] = []
    values: dict = {}

    def check(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    # cycle of the non-algebraic quintic
    s2 = nonalgebraic_quintic()
    cyc = compute_cycle(s2, cfg)
    exact_logA = (4 - 6 * math.sqrt(2)) * math.pi
    values["quintic"] = {
        "A": cyc.A, "B": cyc.B, "a": cyc.a, "r0": cyc.r0, "log_multiplier": cyc.log_multiplier,
        "log_multiplier_exact": "(4 - 6*sqrt(2))*pi", "stability": cyc.stability,
        "exists": cyc.exists.value,
    }
    check("cycle constant a = 1.19903", abs(cyc.a - 1.19903) <= 1e-4, _num(cyc.a))
    check("crossing radius r0 = 0.9132", abs(cyc.r0 - 0.9132) <= 5e-4, _num(cyc.r0))
    check("log multiplier = (4 - 6 sqrt 2) pi", abs(cyc.log_multiplier / exact_logA - 1) <= 1e-10,
          _num(cyc.log_multiplier))
    p2 = psi(2 * math.pi, cfg)
    check("psi(2 pi) = 2 sqrt 2 pi", abs(p2 / (2 * math.sqrt(2) * math.pi) - 1) <= 1e-10, _num(p2))
    check("unique hyperbolic unstable cycle",
          cyc.exists is Existence.UNIQUE and cyc.hyperbolic and cyc.stability == "unstable", str(cyc.stability))

    # the algebraic control
    s4 = algebraic_quintic()
    cyc4 = compute_cycle(s4, cfg)
    dev = float(max(abs(r - 1.0) for r in cyc4.r))
    unit = cofactor_of(1 - X**2 - Y**2, s4)
    values["algebraic_quintic"] = {"a": cyc4.a, "max_abs_r_minus_1": dev, "circle_cofactor": str(unit.K)}
    check("algebraic cycle is the unit circle", dev <= 1e-8, _num(dev))

    # invariant curves of the quintic
    c1 = origin_lines_curve(s2)
    values["origin_lines_curve"] = {"F": str(c1.F), "K": str(c1.K)}
    check("origin-lines curve has top cofactor deg(F) R", check_top_cofactor(c1, s2))
    check("divergence identity", divergence_identity(s2) and divergence_identity(s4))
    for F, K in ((X**2 + Y**2, 2 * (2 * X**4 + 2 * X**2 * Y**2 + Y**4 - X**2 - 2 * Y**2)),
                 (2 * X**2 + Y**2, 2 * (2 * X**4 + 2 * X**2 * Y**2 + Y**4 - X**2 + X * Y - 2 * Y**2))):
        check(f"cofactor of {F}", cofactor_of(F, s2).K == K, str(K))

    # necessary conditions along the four complex lines
    t = detector.build_template(s2, parity="even")
    cs1, _ = detector.line_family_constraints(s2, t, -1)
    cs2, _ = detector.line_family_constraints(s2, t, -2)
    a00, a20, a11, a02, ell = (_v(x) for x in ("a00", "a20", "a11", "a02", "l"))
    ok1 = cs1.equals([a20 - a11 - a02 - a00, a20 + a11 - a02 - 2 * ell, a00])
    ok2 = cs2.equals([a11, a00])
    con = detector.conclude(s2, [cs1, cs2], lines=(-1, -2))
    values["constraints"] = {"alpha^2=-1": _row_space(cs1), "alpha^2=-2": _row_space(cs2),
                             "solution": str(con.solution), "verdict": con.verdict.value}
    check("constraints along y = +-i x", ok1, _row_space(cs1))
    check("constraints along y = +-i sqrt(2) x", ok2, _row_space(cs2))
    check("degree forced to zero", con.nonexistence and con.solution.forces("l", 0), str(con.solution))

    # rotation family
    fam = rotation_family_curves(1, -(X**2 + Y**2))
    fam3 = rotation_family_curves(1, -X * (X**2 + Y**2))
    values["rotation_family"] = {"H": str(fam.H), "K": str(fam.curve.K), "circle_sum": str(fam.circle_sum),
                                 "m3_limit_cycle": fam3.limit_cycle}
    check("rotation family m=2: H = x^2 + y^2 - 1 with a limit cycle",
          fam.H == X**2 + Y**2 - 1 and fam.curve.K == -2 * (X**2 + Y**2) and fam.limit_cycle, str(fam.H))
    check("rotation family m=3: no limit cycle", not fam3.limit_cycle)

    # Filiptsov quadratic system
    fil = filiptsov_check(FILIPTSOV_A)
    values["filiptsov"] = {"a": str(FILIPTSOV_A), "cofactor": str(fil.K)}
    check("Filiptsov quartic has a degree-1 cofactor", fil.K.degree == 1, str(fil.K))

    # direct integration
    cc = ode_crosscheck(s2, (0.9132, 0.0))
    values["ode"] = {"first_return": cc.first_return, "log_slope": cc.log_slope}
    check("ODE first return within 1e-4", abs(cc.first_return - 0.9132) <= 1e-4, _num(cc.first_return))
    check("ODE log slope matches", abs(cc.log_slope / exact_logA - 1) <= 1e-2, _num(cc.log_slope))
    return checks, values


def _row_space(cs: detector.ConstraintSet) -> str:
    """Reduced row echelon form over Q, printed as equations."""
    return str(cs)


def cmd_reproduce(args) -> int:
    checks, values = reproduce_checks(_config(args.tol))
    failed = [c for c in checks if not c["passed"]]
    if args.json:
        out = {"checks": checks, "values": _jsonable(values), "passed": not failed}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        q = values["quintic"]
        print("non-algebraic quintic")
        print(f"  a = {_num(q['a'])}   r0 = {_num(q['r0'])}")
        print(f"  log multiplier = {_num(q['log_multiplier'])}   exact {q['log_multiplier_exact']}"
              f" = {_num((4 - 6 * math.sqrt(2)) * math.pi)}")
        print(f"  cycle: {q['exists']}, {q['stability']}")
        print(f"  y P - x Q = {values['origin_lines_curve']['F']}")
        c = values["constraints"]
        print(f"  conditions along y = +-i x:         {c['alpha^2=-1']}")
        print(f"  conditions along y = +-i sqrt(2) x: {c['alpha^2=-2']}")
        print(f"  combined: {c['solution']} -> {c['verdict']}")
        a4 = values["algebraic_quintic"]
        print("algebraic quintic")
        print(f"  a = {_num(a4['a'])}   max |r - 1| = {_num(a4['max_abs_r_minus_1'])}")
        print(f"  1 - x^2 - y^2 has cofactor {a4['circle_cofactor']}")
        rf = values["rotation_family"]
        print(f"rotation family: H = {rf['H']}, cofactor {rf['K']}, circle sum {rf['circle_sum']}")
        print(f"Filiptsov a = {values['filiptsov']['a']}: cofactor {values['filiptsov']['cofactor']}")
        o = values["ode"]
        print(f"direct integration: first return {_num(o['first_return'])}, log slope {_num(o['log_slope'])}")
        print()
        for chk in checks:
            print(f"{'PASS' if chk['passed'] else 'FAIL'}  {chk['name']}")
    if failed:
        print(f"first failing check: {failed[0]['name']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, float):
        return float(format(obj, ".15g"))
    if isinstance(obj, (Fraction,)):
        return str(obj)
    return obj


# ---------------------------------------------------------------------------
# file-based commands


def _load(path):
    spec = load_spec(path)
    return spec, spec.system()


def _print_detection(s: SystemSpec, lines, parity, max_deg, log_rule) -> detector.Conclusion:
    t = detector.build_template(s, max_deg, parity)
    print(f"cofactor template: K = {t}")
    sets = []
    for d in lines:
        cs, decs = detector.line_family_constraints(s, t, d, log_rule)
        for br, dec in zip((1, -1), decs):
            print(f"  along y = {detector.LineSolution(d, br).alpha}*x: int K0/X0 = {dec}")
        print(f"  conditions for alpha^2 = {d}: {_row_space(cs)}")
        sets.append(cs)
    con = detector.conclude(s, sets, lines=lines)
    print(str(con))
    return con


def cmd_analyze(args) -> int:
    spec, s = _load(args.path)
    cfg = _config(args.tol, spec.tol)
    pf = to_polar(s)
    print(f"system: x' = {s.X}")
    print(f"        y' = {s.Y}")
    print(f"polar form: f = {pf.f}")
    print(f"            g = {pf.g}")
    print(f"            h = {pf.h}")
    status = EXIT_OK
    try:
        c1 = origin_lines_curve(s)
        print(f"y P - x Q = {c1.F} with cofactor {c1.K}")
    except DegenerateCurve:
        print("y P - x Q vanishes identically: every line through the origin is invariant")
        print("g vanishes identically; no limit cycle")
        return EXIT_FAIL
    if not g_nonvanishing(s):
        angles = vanishing_directions(s)
        desc = ", ".join(f"theta = {_num(a)} (direction ({_num(math.cos(a))}, {_num(math.sin(a))}))" for a in angles)
        print(f"g vanishes at {desc}: invariant line through the origin, no limit cycle")
        status = EXIT_FAIL
    else:
        print("g has no zero on the circle")
        cyc = compute_cycle(s, cfg)
        print(f"A = {_num(cyc.A)}   B = {_num(cyc.B)}   log A = {_num(cyc.log_multiplier)}")
        if cyc.exists is Existence.CONTINUUM:
            print("continuum of periodic orbits")
        elif cyc.exists is Existence.NONE:
            print(f"no limit cycle (a = {_num(cyc.a)}, minimum margin {_num(cyc.min_margin)})")
        else:
            print(f"a = {_num(cyc.a)} (+- {cyc.a_error:.1e})   r0 = {_num(cyc.r0)}")
            print(f"limit cycle: unique, hyperbolic, {cyc.stability}")
            if args.csv:
                with open(args.csv, "w", newline="") as fh:
                    write_profile_csv(cyc, fh)
                print(f"profile written to {args.csv}")
    if spec.lines:
        _print_detection(s, spec.lines, spec.parity, spec.max_cofactor_degree, "rational")
    return status


def cmd_verify(args) -> int:
    _, s = _load(args.path)
    F = parse_polynomial(args.curve)
    if not F:
        raise ParseError("the curve must be a nonzero polynomial")
    try:
        c = cofactor_of(F, s)
    except NotInvariant as exc:
        print(f"{F} = 0 is not invariant (remainder {exc.remainder})")
        return EXIT_FAIL
    print(f"{F} = 0 is invariant with cofactor {c.K}")
    return EXIT_OK


def cmd_detect(args) -> int:
    spec, s = _load(args.path)
    lines = _parse_line_list(args.lines) if args.lines else spec.lines
    if not lines:
        raise ParseError("no lines given (use --lines or a 'lines' directive)")
    parity = args.parity or spec.parity
    _print_detection(s, lines, parity, spec.max_cofactor_degree, args.log_rule)
    return EXIT_OK


def _parse_line_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad --lines value {text!r}") from None


def cmd_simulate(args) -> int:
    _, s = _load(args.path)
    try:
        x0, y0 = (float(v) for v in args.start.split(","))
    except ValueError:
        raise ParseError(f"--start must be 'x,y', got {args.start!r}") from None
    if args.revs < 1:
        raise ParseError("--revs must be at least 1")
    cc = ode_crosscheck(s, (x0, y0), revolutions=args.revs)
    if cc.orientation > 0:
        print("the angle increases in forward time")
    else:
        print("the angle decreases in forward time; integrated backward in time")
    for k, (t, x, y) in enumerate(cc.trajectory.crossings, 1):
        print(f"revolution {k}: t = {_num(t)}  x = {_num(x)}  y = {_num(y)}  r = {_num(math.hypot(x, y))}")
    print(f"return-map slope in rho: {_num(cc.return_slope)}   log = {_num(cc.log_slope)}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclex", description="Explicit limit cycles and invariant curves.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reproduce", help="run the reference examples and their checks")
    r.add_argument("--json", action="store_true", help="machine-readable output")
    r.add_argument("--tol", type=float, help="quadrature tolerance")
    r.set_defaults(func=cmd_reproduce)

    a = sub.add_parser("analyze", help="polar form, cycle, invariant curves of a system file")
    a.add_argument("path")
    a.add_argument("--csv", help="write the cycle profile (theta, r, rho)")
    a.add_argument("--tol", type=float, help="quadrature tolerance")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check whether a curve is invariant")
    v.add_argument("path")
    v.add_argument("--curve", required=True, help='polynomial, e.g. "1 - x^2 - y^2"')
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("detect", help="cofactor conditions along invariant lines y^2 = d x^2")
    d.add_argument("path")
    d.add_argument("--lines", help="comma separated d values, e.g. -1,-2")
    d.add_argument("--parity", choices=("even", "odd"))
    d.add_argument("--log-rule", choices=detector.LOG_RULES, default="rational",
                   help="treatment of logs whose argument is not defined over Q")
    d.set_defaults(func=cmd_detect)

    sm = sub.add_parser("simulate", help="integrate the field and report returns to the x-axis")
    sm.add_argument("path")
    sm.add_argument("--start", required=True, help="x,y")
    sm.add_argument("--revs", type=int, default=1)
    sm.set_defaults(func=cmd_simulate)
    return p


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``--lines -1,-2`` and ``--start -0.5,0`` through argparse."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--lines", "--start") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (CyclexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
