"""Command-line front end.

Every subcommand writes a JSON report ``{command, params, results, version,
timing}`` (or CSV for curve data) to stdout or ``--out``. Exit status is 0
on success, 2 when a certificate fails and 1 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .errors import PucciError
from .exponent import compute_alpha, critical_exponents, HomogeneousSolution
from .grids import Grid
from .hadamard import check_three_surfaces, mu_curve, whole_space_three_spheres
from .liouville import build_counterexample, classify, transport_counterexample
from .matrix import (Ellipticity, RankTwoForm, pucci_minus, pucci_plus, rank_two_eigenvalues,
                     rank_two_radicand)
from .solutions import PowerFunction, gamma_build, radial_family
from .verify import certify_gamma, certify_sign, feasible_region_scan

CURVE_COMMANDS = ("hadamard", "feasible-region")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite(obj):
    """Replace non-finite floats so the report stays strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return _finite(obj.item())
    return obj


def _ell(args) -> Ellipticity:
    return Ellipticity(args.lam, args.Lam, args.n)


# -- subcommands -----------------------------------------------------------------
# each returns (results, ok, rows) where rows is CSV data for curve commands

def cmd_eig(args):
    n = args.n
    v = np.zeros(n)
    v[0], v[-1] = math.sqrt(max(1 - args.vw ** 2, 0.0)), args.vw
    w = np.zeros(n)
    w[-1] = 1.0
    form = RankTwoForm(args.a, args.b, args.c, args.d, v, w)
    mu = rank_two_eigenvalues(form)
    return {"eigenvalues": mu.tolist(), "radicand": float(rank_two_radicand(args.a, args.b, args.c, args.vw))}, True, None


def cmd_pucci(args):
    if not args.eigs:
        raise UsageError("--eigs is required for pucci")
    ell = Ellipticity(args.lam, args.Lam, len(args.eigs))
    return {"minus": pucci_minus(args.eigs, ell), "plus": pucci_plus(args.eigs, ell)}, True, None


FAMILIES = {
    # name: (alpha, beta, sign, operator) as functions of (omega, n)
    "phi": lambda om, n: (om, om * (n + 1) - 1, "ge", "minus"),
    "phi-hat": lambda om, n: (1.0, om * (n - 1) + 1, "le", "minus"),
    "psi": lambda om, n: (1 / om, (n + 1) / om - 1, "le", "plus"),
    "psi-hat": lambda om, n: (1.0, (n - 1) / om + 1, "ge", "plus"),
}


def cmd_verify_sub(args):
    ell = _ell(args)
    if args.family == "power":
        if args.alpha is None or args.beta is None:
            raise UsageError("--family power needs --alpha and --beta")
        alpha, beta, sign, op = args.alpha, args.beta, args.sign or "ge", args.operator or "minus"
    else:
        alpha, beta, sign, op = FAMILIES[args.family](ell.omega, ell.n)
        sign, op = args.sign or sign, args.operator or op
    grid = Grid(t_count=args.grid_t)
    cert = certify_sign(PowerFunction(alpha, beta), ell, sign, grid, tol=args.tol or 1e-10, operator=op)
    return {"certificate": cert.to_json()}, cert.passed, None


def cmd_verify_gamma(args):
    ell = _ell(args)
    gb = gamma_build(ell)
    cert = certify_gamma(gb, d_max=args.d_max, tol=args.tol or 1e-10, t_count=args.grid_t,
                         d_count=args.grid_d)
    return {"d0": gb.d0, "certificate": cert.to_json()}, cert.passed, None


def cmd_feasible_region(args):
    ell = _ell(args)
    scan = feasible_region_scan(ell, resolution=args.resolution)
    rows = [["alpha", "beta", "feasible"]]
    for i, a in enumerate(scan.alphas):
        for j, b in enumerate(scan.betas):
            rows.append([repr(float(a)), repr(float(b)), int(scan.feasible[i, j])])
    ok = all(v["feasible"] for v in scan.named_points.values())
    return scan.to_json(), ok, rows


def cmd_exponent(args):
    res = compute_alpha(_ell(args))
    return {"exponent": res.as_dict()}, True, None


def cmd_critical(args):
    ell = _ell(args)
    alpha = args.alpha if args.alpha is not None else compute_alpha(ell).alpha
    return {"critical": critical_exponents(alpha, ell).as_dict()}, True, None


def cmd_hadamard(args):
    ell = _ell(args)
    if args.family == "xn":
        u = PowerFunction(1.0, 0.0)
    elif args.family == "phi-hat":
        u = PowerFunction(1.0, ell.omega * (ell.n - 1) + 1)
    else:
        u = HomogeneousSolution(compute_alpha(ell))
    radii = np.geomspace(args.r_min, args.r_max, args.count)
    curve = mu_curve(u, ell, radii)
    report = check_three_surfaces(curve)
    rows = [["r", "mu", "witness_t"]] + [[repr(float(r)), repr(float(m)), repr(float(t))]
                                         for r, m, t in zip(curve.r, curve.mu, curve.witness_t)]
    return {"curve": curve.as_dict(), "check": report}, report["pass"], rows


def cmd_three_spheres(args):
    ell = _ell(args)
    radii = args.radii or [0.5, 1.0, 2.0]
    rep = whole_space_three_spheres(radial_family(ell), ell, radii)
    return {"three_spheres": rep}, bool(rep["pass"]), None


def cmd_classify(args):
    if args.p is None:
        raise UsageError("--p is required for classify")
    return {"verdict": classify(_ell(args), args.p, args.operator or "minus").as_dict()}, True, None


def cmd_counterexample(args):
    if args.p is None:
        raise UsageError("--p is required for counterexample")
    rep = build_counterexample(_ell(args), args.p, args.operator or "minus", tol=args.tol or 1e-9)
    return rep.as_dict(), rep.passed, None


def cmd_transport(args):
    if args.p is None or args.q is None:
        raise UsageError("transport needs --p and --q")
    ell = _ell(args)
    rep = build_counterexample(ell, args.p, args.operator or "minus", tol=args.tol or 1e-9)
    cert = transport_counterexample(rep, args.q, ell, tol=args.tol or 1e-9)
    return {"source": rep.as_dict(), "q": args.q, "certificate": cert.to_json()}, \
        rep.passed and cert.passed, None


COMMANDS = {
    "eig": cmd_eig, "pucci": cmd_pucci, "verify-sub": cmd_verify_sub,
    "verify-gamma": cmd_verify_gamma, "feasible-region": cmd_feasible_region,
    "exponent": cmd_exponent, "critical": cmd_critical, "hadamard": cmd_hadamard,
    "three-spheres": cmd_three_spheres, "classify": cmd_classify,
    "counterexample": cmd_counterexample, "transport": cmd_transport,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, default=1.0)
    common.add_argument("--Lambda", dest="Lam", type=float, default=1.0)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--p", type=float)
    common.add_argument("--grid-t", dest="grid_t", type=int, default=10_000)
    common.add_argument("--grid-d", dest="grid_d", type=int, default=60)
    common.add_argument("--tol", type=float)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="pucci-halfspace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = {name: sub.add_parser(name, parents=[common]) for name in COMMANDS}

    for name in ("a", "b", "c", "d"):
        p["eig"].add_argument(f"--{name}", type=float, default=0.0)
    p["eig"].add_argument("--vw", type=float, default=0.0)
    p["pucci"].add_argument("--eigs", type=float, nargs="+")
    p["verify-sub"].add_argument("--family", choices=("phi", "phi-hat", "psi", "psi-hat", "power"),
                                 default="phi")
    p["verify-sub"].add_argument("--alpha", type=float)
    p["verify-sub"].add_argument("--beta", type=float)
    p["verify-sub"].add_argument("--sign", choices=("ge", "le"))
    for name in ("verify-sub", "classify", "counterexample", "transport"):
        p[name].add_argument("--operator", choices=("minus", "plus"))
    p["verify-gamma"].add_argument("--d-max", dest="d_max", type=float, default=1e3)
    p["feasible-region"].add_argument("--resolution", type=int, default=48)
    p["critical"].add_argument("--alpha", type=float)
    p["hadamard"].add_argument("--family", choices=("xn", "phi-hat", "phi-alpha"), default="phi-hat")
    p["hadamard"].add_argument("--r-min", dest="r_min", type=float, default=0.1)
    p["hadamard"].add_argument("--r-max", dest="r_max", type=float, default=10.0)
    p["hadamard"].add_argument("--count", type=int, default=50)
    p["three-spheres"].add_argument("--radii", type=float, nargs=3)
    p["transport"].add_argument("--q", type=float)
    return parser


def _params(args) -> dict:
    out = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "format", "command")}
    out["lambda"], out["Lambda"] = out.pop("lam"), out.pop("Lam")
    return out


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.format == "csv" and args.command not in CURVE_COMMANDS:
            raise UsageError(f"--format csv is only available for {', '.join(CURVE_COMMANDS)}")
        np.random.seed(args.seed)
        start = time.perf_counter()
        results, ok, rows = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (PucciError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    if args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        text = buf.getvalue()
    else:
        report = {"command": args.command, "params": _params(args), "results": results,
                  "version": __version__, "timing": {"seconds": round(elapsed, 6)}}
        text = json.dumps(_finite(report), indent=2, sort_keys=True) + "\n"
    _emit(text, args.out)
    if not ok:
        sys.stderr.write("certification failed\n")
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
