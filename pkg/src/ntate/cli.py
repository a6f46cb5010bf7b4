"""``ntate`` command line: run the verification suites and evaluate pieces.

Exit status is 0 when every requested check passes, 1 on a check failure
(with a JSON failure report on stdout) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction
from math import comb

from . import polylog, radiation, series, tate
from .laurent import LaurentPoly, ParseError, format_rational, lp_parse

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# ------------------------------------------------------------------ suites


def _random_laurent(rng: random.Random, lo=-8, hi=8, cmax=9, terms=4) -> LaurentPoly:
    return LaurentPoly({rng.randint(lo, hi): rng.randint(-cmax, cmax) for _ in range(rng.randint(0, terms))})


def _bernoulli_recurrence(n: int) -> list[Fraction]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


def suite_exactness(args) -> dict:
    report = tate.exactness_check(args.window)
    return {"pass": report.passed, "window": args.window, "violations": report.violations}


def suite_rota_baxter(args) -> dict:
    rng = random.Random(args.seed)
    failures = []
    for _ in range(1000):
        x, y = _random_laurent(rng), _random_laurent(rng)
        if not tate.rota_baxter_check(x, y):
            failures.append([str(x), str(y)])
    return {"pass": not failures, "pairs": 1000, "failures": failures}


def suite_bernoulli(args) -> dict:
    oracle = _bernoulli_recurrence(40)
    bad = [n for n in range(41) if series.bernoulli(n) != oracle[n]]
    ok = not bad and series.bernoulli(12) == Fraction(-691, 2730)
    return {"pass": ok, "max_index": 40, "mismatches": bad}


def suite_exp_bt(args) -> dict:
    N = args.order
    e = series.exp_bT(N)
    bad = [k for k in range(N + 1) if e[k] != LaurentPoly.monomial(-k, 1, "c", "Q")]
    return {"pass": not bad, "order": N, "mismatches": bad}


def suite_one_form(args) -> dict:
    return {"pass": series.one_form_check(args.order), "order": args.order}


def suite_c_from_b(args) -> dict:
    plus = series.c_from_b_check(16, +1)
    minus = series.c_from_b_check(16, -1)
    return {"pass": plus and not minus, "order": 16, "plus_sign": plus, "minus_sign": minus}


def suite_character(args) -> dict:
    N = 12
    mult = series.fgl_character_check(
        series.FormalGroupLaw.multiplicative(N), series.PowerSeries([1, 1], N), N
    )
    add_exp = series.fgl_character_check(series.FormalGroupLaw.additive(N), series.exp_character(N), N)
    add_lin = series.fgl_character_check(
        series.FormalGroupLaw.additive(N), series.PowerSeries([1, 1], N), N
    )
    return {
        "pass": mult and add_exp and not add_lin,
        "multiplicative_1_plus_T": mult,
        "additive_exp": add_exp,
        "additive_1_plus_T": add_lin,
    }


def suite_polylog(args) -> dict:
    spec = polylog.QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol)
    z2 = polylog.li_s(2, 0.0)
    z4 = polylog.li_s(4, 0.0)
    moment = polylog.gamma_convolve(4, "d_li1", 0.0, spec)
    s1 = [polylog.s1_expansion_check(x, 12) for x in (-1.0, -0.5, -0.1)]
    zetas = [polylog.zeta_neg(k) for k in (1, 2, 3)]
    ok = (
        abs(z2 - math.pi**2 / 6) < 1e-10
        and abs(z4 - math.pi**4 / 90) < 1e-10
        and abs(moment.value - math.pi**4 / 90) < 1e-6
        and all(r.passed for r in s1)
        and zetas == [Fraction(-1, 2), Fraction(-1, 12), Fraction(0)]
    )
    return {
        "pass": ok,
        "li2_at_0": z2,
        "li4_at_0": z4,
        "divided_moment_4_at_0": moment.value,
        "divided_moment_error": moment.error,
        "s1_expansion": [r.to_json() for r in s1],
        "zeta_neg": [format_rational(z) for z in zetas],
    }


def suite_stefan_boltzmann(args) -> dict:
    spec = polylog.QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol)
    consts = radiation.PhysConstants.from_config(args.config)
    rows = []
    ok = True
    for units in radiation.UNITS:
        c = consts.with_units(units)
        for T in (1.0, 300.0, 5772.0, 1e4):
            r = radiation.stefan_boltzmann(T, c, spec)
            ok &= r.relative_error < 1e-6
            rows.append({"temperature": T, "units": units, "relative_error": r.relative_error})
    core = radiation.planck_core_integral(spec)
    ok &= abs(core.value - math.pi**4 / 15) < 1e-8
    ok &= radiation.leading_digits(consts.kappa, 5) == 20836
    return {"pass": bool(ok), "core_integral": core.value, "kappa": consts.kappa, "runs": rows}


SUITES = [
    ("exactness", suite_exactness),
    ("rota_baxter", suite_rota_baxter),
    ("bernoulli", suite_bernoulli),
    ("exp_bT", suite_exp_bt),
    ("one_form", suite_one_form),
    ("c_from_b", suite_c_from_b),
    ("character", suite_character),
    ("polylog", suite_polylog),
    ("stefan_boltzmann", suite_stefan_boltzmann),
]


# ------------------------------------------------------------- subcommands


def cmd_check(args, out) -> int:
    results = {}
    for name, fn in SUITES:
        results[name] = fn(args)
    passed = all(r["pass"] for r in results.values())
    if args.json or not passed:
        out.write(_dump({"pass": passed, "suites": results}) + "\n")
    else:
        for name, _ in SUITES:
            out.write(f"PASS {name}\n")
    return 0 if passed else 1


def _parse_expr(text: str, var: str | None = None, ring: str | None = None) -> LaurentPoly:
    try:
        return lp_parse(text, var=var, ring=ring)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc


def cmd_boundary(args, out) -> int:
    p = _parse_expr(args.expr, var="c")
    if p.ring != "Z":
        raise UsageError("the boundary is defined on integral Laurent polynomials")
    image = tate.boundary(p)
    out.write((_dump(image.to_json()) if args.json else str(image)) + "\n")
    return 0


def cmd_series(args, out) -> int:
    N = args.order
    kind = args.kind
    if kind == "bernoulli":
        values = [format_rational(series.bernoulli(n)) for n in range(N + 1)]
    elif kind == "cumulants":
        values = [format_rational(series.uniform_cumulants(n)) for n in range(1, N + 1)]
    elif kind == "b":
        values = [str(a) for a in series.b_series(N).coeffs]
    elif kind == "exp-bT":
        values = [str(a) for a in series.exp_bT(N).coeffs]
    else:  # c-from-b
        values = [str(a) for a in series.c_from_b(N, args.sign).coeffs]
    if args.json:
        out.write(_dump({"kind": kind, "order": N, "coeffs": values}) + "\n")
    else:
        for i, v in enumerate(values):
            out.write(f"{i}\t{v}\n")
    return 0


def cmd_polylog(args, out) -> int:
    if args.convolve:
        spec = polylog.QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol)
        if float(args.s) != int(args.s):
            raise UsageError("--convolve needs an integer --s")
        r = polylog.gamma_convolve(int(args.s), args.convolve, args.x, spec)
        payload = {"s": args.s, "x": args.x, "f": args.convolve, "value": r.value, "error": r.error,
                   "tail_bound": r.tail_bound, "cutoff": r.cutoff}
    else:
        r = polylog.li_s_certified(args.s, args.x)
        payload = {"s": args.s, "x": args.x, "value": r.value, "error": r.error}
    out.write((_dump(payload) if args.json else repr(payload["value"])) + "\n")
    return 0


def cmd_planck(args, out) -> int:
    consts = radiation.PhysConstants.from_config(args.config, units=args.units)
    spec = polylog.QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol)
    result = radiation.stefan_boltzmann(args.temp, consts, spec)
    table = radiation.planck_table(args.temp, consts, n=args.points)
    if args.out == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nu_hz", "spectral_radiance", "integral", "closed_form", "relative_error"])
        for nu, val in table:
            w.writerow([repr(nu), repr(val), repr(result.quadrature), repr(result.closed_form),
                        repr(result.relative_error)])
        out.write(buf.getvalue())
    else:
        payload = result.to_json()
        payload["grid"] = [[nu, val] for nu, val in table]
        out.write(_dump(payload) + "\n")
    return 0 if result.relative_error < 1e-6 else 1


def _gaussian(text: str) -> radiation.GaussianTerm:
    try:
        mu, w, a = (float(s) for s in text.split(","))
        return radiation.GaussianTerm(mu, w, a)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected center,width,amplitude, got {text!r}") from exc


def cmd_pair(args, out) -> int:
    form = _parse_expr(args.expr, var="c")
    terms = tuple(args.gauss or [radiation.GaussianTerm(0.0, 1.0, 1.0)])
    spec = polylog.QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol)
    r = radiation.pairing_eval(radiation.GaussianSpec(terms), form, spec)
    payload = {"form": str(form), "value": r.value, "error": r.error}
    out.write((_dump(payload) if args.json else repr(r.value)) + "\n")
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="quadrature tolerance")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized suites")
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON file with h, k_B, c_light")

    parser = argparse.ArgumentParser(prog="ntate", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run every verification suite")
    p.add_argument("--window", type=int, default=64)
    p.add_argument("--order", type=int, default=64)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("boundary", parents=[common], help="apply the boundary map to a Laurent polynomial")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("series", parents=[common], help="print generating-series coefficients")
    p.add_argument("--kind", choices=["b", "exp-bT", "c-from-b", "bernoulli", "cumulants"], default="b")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("polylog", parents=[common], help="evaluate li_s or a gamma-kernel convolution")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--convolve", choices=["li0", "d_li1", "li1"])
    p.set_defaults(func=cmd_polylog)

    p = sub.add_parser("planck", parents=[common], help="spectral table and T^4 law check")
    p.add_argument("--temp", type=float, required=True)
    p.add_argument("--units", choices=list(radiation.UNITS), default="si")
    p.add_argument("--out", choices=["csv", "json"], default="json")
    p.add_argument("--points", type=int, default=50)
    p.set_defaults(func=cmd_planck)

    p = sub.add_parser("pair", parents=[common], help="pair a Gaussian test function with p(c) dc")
    p.add_argument("--expr", required=True)
    p.add_argument("--gauss", type=_gaussian, action="append", help="center,width,amplitude (repeatable)")
    p.set_defaults(func=cmd_pair)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("json", False), ("tol", 1e-10), ("seed", 0), ("config", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"ntate: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (polylog.DomainError, series.SeriesError, ValueError) as exc:
        print(f"ntate: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except polylog.QuadratureError as exc:
        out.write(_dump({"pass": False, "error": str(exc), "achieved": exc.achieved}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
