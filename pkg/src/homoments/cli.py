"""Command-line front end.

Exit codes: 0 all checks pass, 1 bad input, 2 hard (exact or deterministic)
failure, 3 Monte Carlo check outside its band, 64 unrecognised arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import so4_orbit, sphere
from .combinatorics import i_mn_expand, mixed_moment
from .exact_core import i_mn, i_mn_closed
from .hypergeometric import check_2f1_identity
from .montecarlo import joint_sigmas, mutually_consistent
from .vortex import RadiusConditionError, VortexParams, series_length, z_closed, z_series

DEFAULT_SEED = 0xD1CE
EXIT_OK, EXIT_USAGE, EXIT_HARD, EXIT_STAT, EXIT_BAD_FLAGS = 0, 1, 2, 3, 64
REPORT_FIELDS = ["check", "expected", "observed", "metric", "threshold", "pass"]
VORTEX_FIELDS = ["N", "R2", "mu2", "T", "hbar", "Z_series", "Z_closed", "rel_diff", "terms_used"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_FLAGS, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text, 0)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _cell(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def _render(rows: list[dict], fields: list[str], fmt: str, key: str) -> str:
    if fmt == "json":
        payload = {key: [{k: _jsonable(r[k]) for k in fields} for r in rows]}
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for r in rows:
            writer.writerow([_cell(r[k]) for k in fields])
        return buf.getvalue()
    table = [fields] + [[_cell(r[k]) for k in fields] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(fields))]
    return "".join(
        "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in table
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# imn

def cmd_imn(args) -> int:
    rows, mismatches = [], []
    for m in range(args.m_max + 1):
        for n in range(1, args.n_max + 1):
            value = i_mn(m, n)
            if i_mn_closed(m, n) != value or i_mn_expand(m, n) != value:
                mismatches.append((m, n))
            rows.append({"m": m, "n": n, "value": value})
    if mismatches:
        print(f"cross-check failed for (m, n) in {mismatches}", file=sys.stderr)
        return EXIT_HARD
    if args.format == "text":
        lines = ["m\\n " + " ".join(f"{n:>10}" for n in range(1, args.n_max + 1))]
        for m in range(args.m_max + 1):
            cells = (str(r["value"]) for r in rows if r["m"] == m)
            lines.append(f"{m:>3} " + " ".join(f"{c:>10}" for c in cells))
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_render(rows, ["m", "n", "value"], args.format, "I"), args.out)
    return EXIT_OK


# moment

def cmd_moment(args) -> int:
    try:
        value = mixed_moment(args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        _emit(json.dumps({"r": args.r, "moment": str(value)}) + "\n", args.out)
    elif args.format == "csv":
        _emit(_render([{"r": " ".join(map(str, args.r)), "moment": value}], ["r", "moment"], "csv", ""), args.out)
    else:
        _emit(f"{value}\n", args.out)
    return EXIT_OK


# verify

def _check(name, expected, observed, metric, threshold, ok, kind="hard"):
    return {
        "check": name,
        "expected": expected,
        "observed": observed,
        "metric": metric,
        "threshold": threshold,
        "pass": ok,
        "kind": kind,
    }


def _mc_check(name, estimate, expected, k=3.0):
    sig = estimate.sigmas_from(expected)
    return _check(name, expected, estimate.mean, sig, k, sig <= k, "stat")


def _verify_sphere(args) -> list[dict]:
    n, m = args.n, args.m
    if n < 2:
        raise UsageError("verify sphere needs --n >= 2")
    if m < 0:
        raise UsageError("--m must be >= 0")
    target = i_mn(m, n)
    checks = []
    ratio = sphere.sphere_volume(n) / sphere.axis_moment(n, m)
    checks.append(_check(f"volume/axis_moment == I({m},{n})", target,
                         ratio.coeff if ratio.is_rational() else float(ratio),
                         "exact", 0, ratio.is_rational() and ratio.coeff == target))
    exact = float(sphere.axis_moment(n, m))
    quad = sphere.quad_axis_moment(n, m, args.tol)
    err = abs(quad - exact)
    checks.append(_check(f"quadrature axis moment (n={n}, m={m})", exact, quad, err, args.tol, err <= args.tol))
    expected = float(1 / target)
    axis = np.zeros(n)
    axis[-1] = 1.0
    estimates = [sphere.mc_projected_moment(n, m, axis, args.samples, args.seed)]
    checks.append(_mc_check(f"MC <e_{n},x>^{2 * m} == 1/I({m},{n})", estimates[0], expected))
    for k in range(args.directions):
        v = sphere.random_unit_vector(n, args.seed, k)
        est = sphere.mc_projected_moment(n, m, v, args.samples, args.seed + 1 + k)
        estimates.append(est)
        checks.append(_mc_check(f"MC random direction #{k} == 1/I({m},{n})", est, expected))
    worst = max((joint_sigmas(a, b) for i, a in enumerate(estimates) for b in estimates[i + 1:]), default=0.0)
    checks.append(_check("MC direction independence", 0.0, worst, worst, 3.0,
                         mutually_consistent(estimates), "stat"))
    return checks


def _verify_orbit(args) -> list[dict]:
    m = args.m
    if m < 1:
        raise UsageError("verify orbit needs --m >= 1")
    checks = []
    norm_err, pf_err = so4_orbit.orbit_invariant_errors(args.samples, args.seed)
    checks.append(_check("orbit |J|^2 == 1 per sample", 1.0, 1.0 + norm_err, norm_err, 1e-12, norm_err <= 1e-12))
    checks.append(_check("orbit Pf(J) == 0 per sample", 0.0, pf_err, pf_err, 1e-12, pf_err <= 1e-12))
    checks.append(_mc_check("MC mean J12*J34 == 0", so4_orbit.mc_orthogonality(args.samples, args.seed + 1), 0.0))
    checks.append(_mc_check("MC mean J13*J24 == 0",
                            so4_orbit.mc_component_product("13", "24", args.samples, args.seed + 2), 0.0))
    e12 = np.eye(6)[0]
    mixed = (np.eye(6)[0] + np.eye(6)[5]) / math.sqrt(2)
    if m == 1:
        for label, v, s in (("e12", e12, 3), ("(e12+e34)/sqrt2", mixed, 4)):
            est = so4_orbit.mc_orbit_hypothesis(1, v, args.samples, args.seed + s)
            checks.append(_mc_check(f"MC <v,J>^2 == 1/6, v={label}, Pf(v)={so4_orbit.pfaffian(v):g}",
                                    est, 1 / 6))
        return checks
    estimates = []
    for k in range(max(args.directions, 2)):
        v = so4_orbit.random_pf_zero_direction(args.seed, k)
        estimates.append(so4_orbit.mc_orbit_hypothesis(m, v, args.samples, args.seed + 10 + k))
    worst = max(joint_sigmas(a, b) for i, a in enumerate(estimates) for b in estimates[i + 1:])
    checks.append(_check(f"MC <v,J>^{2 * m} constant over Pf(v)=0 directions", 0.0, worst, worst, 3.0,
                         mutually_consistent(estimates), "stat"))
    pooled = float(np.mean([e.mean for e in estimates]))
    off = so4_orbit.mc_orbit_hypothesis(m, mixed, args.samples, args.seed + 5)
    checks.append(_check(f"report: <v,J>^{2 * m} at Pf(v)=1/2 vs Pf(v)=0 mean", pooled, off.mean,
                         joint_sigmas(off, estimates[0]), None, None, "info"))
    return checks


def _verify_hyperg(args) -> list[dict]:
    m, n = args.m, args.n
    if m < 0 or n < 2:
        raise UsageError("verify hyperg needs --m >= 0 and --n >= 2")
    lhs, rhs, ok = check_2f1_identity(m, n, args.tol)
    exact = i_mn(m, n)
    return [
        _check(f"2F1({2 * m},{n - 1};{Fraction(2 * m + n, 2)};1/2) == I({m},{n})", rhs, lhs,
               abs(lhs - rhs) / abs(rhs), args.tol, ok),
        _check(f"I({m},{n}) closed form", exact, i_mn_closed(m, n), "exact", 0, i_mn_closed(m, n) == exact),
        _check(f"I({m},{n}) expansion", exact, i_mn_expand(m, n), "exact", 0, i_mn_expand(m, n) == exact),
    ]


_VERIFIERS = {"sphere": _verify_sphere, "orbit": _verify_orbit, "hyperg": _verify_hyperg}


def cmd_verify(args) -> int:
    if args.tol is None:
        args.tol = 1e-10
    try:
        checks = _VERIFIERS[args.target](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fmt = "json" if args.format is None else args.format
    _emit(_render(checks, REPORT_FIELDS, fmt, "checks"), args.out)
    if any(c["pass"] is False and c["kind"] == "hard" for c in checks):
        return EXIT_HARD
    if any(c["pass"] is False for c in checks):
        return EXIT_STAT
    return EXIT_OK


# vortex

def _vortex_grid(args):
    for N in args.N:
        r2_values = args.R2 if args.R2 is not None else [N + d for d in args.dR2]
        for R2 in r2_values:
            if args.coupling is not None:
                for c in args.coupling:
                    yield VortexParams.from_coupling(N, R2, c, args.T, args.hbar)
            else:
                for mu2 in args.mu2:
                    yield VortexParams(N, R2, mu2, args.T, args.hbar)


def cmd_vortex(args) -> int:
    tol = 1e-8 if args.tol is None else args.tol
    rows = []
    try:
        grid = list(_vortex_grid(args))
    except RadiusConditionError:
        print("error: radius condition R^2 > N violated", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for p in grid:
        zs, zc = z_series(p), z_closed(p)
        rows.append({
            "N": p.N, "R2": p.R2, "mu2": p.mu2, "T": p.T, "hbar": p.hbar,
            "Z_series": zs, "Z_closed": zc,
            "rel_diff": abs(zs - zc) / abs(zc),
            "terms_used": series_length(p),
        })
    _emit(_render(rows, VORTEX_FIELDS, args.format or "csv", "rows"), args.out)
    return EXIT_HARD if any(r["rel_diff"] > tol for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help=f"base seed for random streams (default {DEFAULT_SEED:#x})")
    common.add_argument("--samples", type=_positive_int, default=1_000_000, help="Monte Carlo sample count")
    common.add_argument("--tol", type=_positive_float, default=None, help="numerical tolerance")
    common.add_argument("--format", choices=["text", "csv", "json"], default=None, help="output format")
    common.add_argument("--out", metavar="PATH", default=None, help="write output to PATH instead of stdout")

    parser = _Parser(prog="homoments", description="Exact homogeneous moments and their numerical checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("imn", parents=[common], help="table of exact I(m, n)")
    p.add_argument("--m-max", type=_positive_int, default=6)
    p.add_argument("--n-max", type=_positive_int, default=6)
    p.set_defaults(func=cmd_imn)

    p = sub.add_parser("moment", parents=[common], help="mixed moment for exponents r_1 ... r_n")
    p.add_argument("r", type=int, nargs="+")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite, report JSON")
    p.add_argument("target", choices=sorted(_VERIFIERS))
    p.add_argument("--n", type=int, default=3, help="sphere dimension n (S^(n-1)) or I(m, n) index")
    p.add_argument("--m", type=int, default=1, help="moment order (power 2m)")
    p.add_argument("--directions", type=int, default=3, help="random directions for isotropy checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("vortex", parents=[common], help="vortex gas partition function, two ways")
    p.add_argument("--N", type=_positive_int, nargs="+", default=[1])
    r2 = p.add_mutually_exclusive_group()
    r2.add_argument("--R2", type=float, nargs="+", help="sphere radius squared")
    r2.add_argument("--dR2", type=_positive_float, nargs="+", default=[1.0], help="R^2 - N")
    mu = p.add_mutually_exclusive_group()
    mu.add_argument("--mu2", type=float, nargs="+", default=[0.0], help="coupling mu^2")
    mu.add_argument("--coupling", type=float, nargs="+", help="dimensionless mu^2 A^2 / T")
    p.add_argument("--T", type=_positive_float, default=1.0)
    p.add_argument("--hbar", type=_positive_float, default=1.0)
    p.set_defaults(func=cmd_vortex)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("imn", "moment") and args.format is None:
        args.format = "text"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
