"""Command-line front end.

Results go to stdout as JSON (CSV for ``trace``); diagnostics and the version
banner go to stderr.  Exit status: 0 ok, 1 malformed input, 2 mathematically
invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__
from . import foliation as fol
from . import origami as ori
from . import pairs
from . import serialization as ser
from . import torus
from .exactlog import INF, ExactLog

EXIT_MALFORMED = 1
EXIT_INVALID = 2


class InvalidInput(Exception):
    """Well-formed input with no mathematically valid answer."""


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ser.SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ser.SchemaError(f"{path}: invalid JSON ({exc.msg})") from None


def _grid(spec: str):
    """``lo:hi:step`` or a comma list."""
    try:
        if ":" in spec:
            lo, hi, step = (float(x) for x in spec.split(":"))
            return [float(v) for v in pairs.sigma_grid(lo, hi, step)]
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise ser.SchemaError(f"bad grid {spec!r}; expected lo:hi:step or a,b,c") from None


def _exact_number(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ser.SchemaError(f"bad number {text!r}") from None


def _curve(text: str) -> torus.CurveClass:
    try:
        p, q = (int(x) for x in text.split(","))
        return torus.CurveClass(p, q)
    except ValueError as exc:
        raise ser.SchemaError(f"bad curve {text!r}: {exc}") from None


def _omega(args) -> torus.TorusPoint:
    try:
        return torus.TorusPoint(_exact_number(args.re), _exact_number(args.im))
    except ValueError as exc:
        raise ser.SchemaError(str(exc)) from None


def cmd_limit(args, out):
    data = _load(args.input)
    d = ser.ray_from_json(ser._require(data, "ray", dict))
    F = ser.foliation_from_json(ser._require(data, "foliation", dict))
    if len(F.u if isinstance(F, fol.GeneralFoliation) else F) != len(d):
        raise ser.SchemaError("foliation length does not match the ray")
    u = F.u if isinstance(F, fol.GeneralFoliation) else [0] * len(d)
    shrink = fol.e_q(d, u)
    try:
        grow = fol.grow_limit(d, F)
    except fol.UndefinedRatio as exc:
        raise InvalidInput(str(exc)) from None
    except ValueError as exc:
        raise ser.SchemaError(str(exc)) from None
    result = {"shrink_limit": ser.fmt(shrink.square), "e_q": shrink.root,
              "grow_limit": ser.extended_to_json(grow)}
    if isinstance(F, fol.BasisFoliation):
        result["optimal_witness"] = [ser.fmt(x) for x in fol.optimal_witness(d, F)]
    out.write(ser.dumps(result) + "\n")


def _pair(args):
    d1, d2 = ser.pair_from_json(_load(args.input))
    comparable = pairs.align(d1, d2).comparable
    if not comparable and getattr(args, "require_finite", False):
        raise InvalidInput("rays are not absolutely continuous; the answer is +inf")
    return d1, d2, comparable


def cmd_distance(args, out):
    d1, d2, _ = _pair(args)
    out.write(ser.dumps(ser.distance_to_json(pairs.limiting_distance(d1, d2))) + "\n")


def cmd_detour(args, out):
    d1, d2, _ = _pair(args)
    result = ser.logsum_to_json(pairs.detour_distance(d1, d2))
    result["half"] = ser.logsum_to_json(pairs.min_limiting_distance(d1, d2))
    out.write(ser.dumps(result) + "\n")


def cmd_shift(args, out):
    d1, d2, comparable = _pair(args)
    if not comparable:
        raise InvalidInput("optimal shift needs absolutely continuous rays")
    sigma = pairs.optimal_shift(d1, d2)
    result = {
        "sigma": ser.exactlog_to_json(sigma),
        "shifted_distance": ser.distance_to_json(pairs.shifted_limiting_distance(d1, d2, sigma)),
        "unshifted_distance": ser.distance_to_json(pairs.limiting_distance(d1, d2)),
        "half_detour": ser.logsum_to_json(pairs.min_limiting_distance(d1, d2)),
    }
    if args.sigma_grid:
        lo_hi_step = args.sigma_grid.split(":")
        if len(lo_hi_step) != 3:
            raise ser.SchemaError("--sigma-grid expects lo:hi:step")
        grid = pairs.sigma_grid(*(float(x) for x in lo_hi_step))
        scan = pairs.scan_shifts(d1, d2, grid)
        result["grid"] = {"points": len(grid), "best_sigma": scan.best_sigma,
                          "best_distance": scan.best_distance}
    out.write(ser.dumps(result) + "\n")


def cmd_equiv(args, out):
    d1, d2, _ = _pair(args)
    c = pairs.modular_equivalence(d1, d2)
    result = {
        "comparable": pairs.align(d1, d2).comparable,
        "modularly_equivalent": c is not None,
        "constant": None if c is None else ser.fmt(c),
        "asymptotic": pairs.is_asymptotic(d1, d2),
        "busemann_equal": pairs.busemann_equal(d1, d2),
    }
    if c is not None:
        result["asymptotic_shift"] = ser.exactlog_to_json(ExactLog(c, Fraction(1, 2)))
    out.write(ser.dumps(result) + "\n")


def cmd_torus_verify(args, out):
    omega = _omega(args)
    curves = [_curve(c) for c in args.curves.split(";")]
    grid = _grid(args.t_grid)
    report = torus.verify_limits(omega, curves, grid, args.direction)
    ray = torus.ray_data_torus(omega, args.direction)
    result = {
        "omega": {"re": ser.fmt(omega.re), "im": ser.fmt(omega.im)},
        "direction": args.direction,
        "kind": ray.kind.value,
        "ray": ser.ray_to_json(ray.decomposition),
        "core": None if ray.core is None else [ray.core.p, ray.core.q],
        "checks": report.checks,
        "failures": report.failures,
        "max_residual_error": report.max_residual_error,
        "ok": report.ok,
    }
    if args.compare_re is not None:
        other = torus.TorusPoint(_exact_number(args.compare_re), _exact_number(args.compare_im))
        k = torus.kerckhoff_search(omega, other, args.bound)
        exact = torus.teich_dist_exact(omega, other)
        result["kerckhoff"] = {"bound": args.bound, "sup": k.distance,
                               "argmax": [k.curve.p, k.curve.q],
                               "teich_dist": exact, "deficit": exact - k.distance}
    out.write(ser.dumps(result) + "\n")


def cmd_origami(args, out):
    o = ser.origami_from_json(_load(args.input))
    cyls = ori.cylinders(o, args.direction)
    d = ori.ray_data(o, args.direction)
    result = {
        "n": o.n,
        "genus": ori.genus(o),
        "cone_angles": ori.cone_angles(o),
        "direction": args.direction,
        "cylinders": [
            {"cells": sorted(k + 1 for k in c.cells), "width": c.width,
             "circumference": c.circumference}
            for c in cyls
        ],
        "moduli": [ser.fmt(m) for m in fol.moduli(d)],
        "core_grow_limits": [ser.fmt(x) for x in ori.core_grow_limits(o, args.direction)],
        "ray": ser.ray_to_json(d),
        "core_intersections": ori.core_intersections(o),
    }
    if args.compare:
        other = ser.origami_from_json(_load(args.compare))
        matching = _matching(args.matching, len(cyls))
        try:
            rep = ori.compare_rays(o, other, matching, args.direction)
        except ValueError as exc:
            raise ser.SchemaError(str(exc)) from None
        result["comparison"] = {
            "limiting_distance": ser.distance_to_json(rep.limiting),
            "detour": ser.logsum_to_json(rep.detour),
            "optimal_shift": ser.exactlog_to_json(rep.shift),
            "modular_constant": None if rep.constant is None else ser.fmt(rep.constant),
            "busemann_equal": rep.equivalent,
        }
    out.write(ser.dumps(result) + "\n")


def _matching(text, n):
    if not text:
        return [(k, k) for k in range(n)]
    try:
        return [tuple(int(x) for x in item.split(":")) for item in text.split(",")]
    except ValueError:
        raise ser.SchemaError(f"bad matching {text!r}; expected i:j,i:j") from None


def _cell(v):
    if v is None:
        return ""
    if v == INF:
        return "+inf"
    return repr(float(v))


def cmd_trace(args, out):
    grid = _grid(args.t_grid)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "quantity", "value", "bound_low", "bound_high", "limit"])
    if args.origami:
        o = ser.origami_from_json(_load(args.origami))
        d = ori.ray_data(o)
        if not 0 <= args.cylinder < len(d):
            raise InvalidInput(f"cylinder {args.cylinder} out of range")
        # e^(2t) times the sandwich is t-independent; Ext itself is never evaluated on higher genus
        lo, hi = ori.finite_t_bounds(o, args.cylinder, 0)
        limit = 1 / d.components[args.cylinder].modulus
        for t in grid:
            writer.writerow([repr(t), "grow", "", _cell(lo), _cell(hi), _cell(limit)])
        return
    omega = torus.TorusPoint(_exact_number(args.re), _exact_number(args.im))
    gamma = _curve(args.curve)
    ray = torus.ray_data_torus(omega, args.direction)
    for t in grid:
        ext = ray.ext_at(gamma, float(t))
        if args.quantity == "shrink":
            limit = ray.shrink_limit(gamma)
            writer.writerow([repr(t), "shrink", _cell(ext * _growth(-t)), _cell(limit), "", _cell(limit)])
        else:
            limit = ray.grow_limit(gamma)
            writer.writerow([repr(t), "grow", _cell(ext * _growth(t)), "", "", _cell(limit)])


def _growth(t):
    return math.exp(2.0 * t)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="teichray", description=__doc__.splitlines()[0])
    parser.add_argument("--no-banner", action="store_true", help="suppress the version line on stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-banner", action="store_true", default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("limit", help="shrink and grow limits of a foliation along a ray", parents=[common])
    p.add_argument("input", help="JSON {ray, foliation}; '-' for stdin")
    p.set_defaults(func=cmd_limit)

    for name, func, helptext in (
        ("distance", cmd_distance, "limiting Teichmueller distance"),
        ("detour", cmd_detour, "detour distance between the Busemann points"),
        ("shift", cmd_shift, "optimal shift and the minimal limiting distance"),
        ("equiv", cmd_equiv, "modular equivalence / asymptoticity / Busemann equality"),
    ):
        p = sub.add_parser(name, help=helptext, parents=[common])
        p.add_argument("input", help="JSON {ray1, ray2}; '-' for stdin")
        p.add_argument("--require-finite", action="store_true",
                       help="exit 2 instead of reporting +inf for non-comparable rays")
        if name == "shift":
            p.add_argument("--sigma-grid", metavar="LO:HI:STEP", help="also scan shifts on this grid")
        p.set_defaults(func=func)

    p = sub.add_parser("torus-verify", help="check the limit formulas on a flat torus", parents=[common])
    p.add_argument("--re", required=True, help="Re omega (decimal or p/q)")
    p.add_argument("--im", required=True, help="Im omega (decimal or p/q)")
    p.add_argument("--curves", default="1,0;0,1;1,1", help="curves 'p,q;p,q'")
    p.add_argument("--t-grid", default="0:8:1")
    p.add_argument("--direction", choices=["vertical", "horizontal"], default="vertical")
    p.add_argument("--compare-re")
    p.add_argument("--compare-im")
    p.add_argument("--bound", type=int, default=200, help="Kerckhoff search box")
    p.set_defaults(func=cmd_torus_verify)

    p = sub.add_parser("origami-analyze", help="cylinders, moduli and limits of an origami", parents=[common])
    p.add_argument("input", help="origami JSON {n, r, u}")
    p.add_argument("--direction", choices=["vertical", "horizontal"], default="vertical")
    p.add_argument("--compare", help="second origami JSON")
    p.add_argument("--matching", help="cylinder matching 'i:j,i:j' (default identity)")
    p.set_defaults(func=cmd_origami)

    p = sub.add_parser("trace", help="CSV convergence trace over a t-grid", parents=[common])
    p.add_argument("--re")
    p.add_argument("--im")
    p.add_argument("--curve", default="1,0")
    p.add_argument("--quantity", choices=["shrink", "grow"], default="shrink")
    p.add_argument("--direction", choices=["vertical", "horizontal"], default="vertical")
    p.add_argument("--origami", help="trace the bounds of an origami cylinder instead")
    p.add_argument("--cylinder", type=int, default=0)
    p.add_argument("--t-grid", default="0:5:1")
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else 0
    if not args.no_banner:
        stderr.write(f"teichray {__version__}\n")
    if args.command == "trace" and not args.origami and (args.re is None or args.im is None):
        stderr.write("error: trace needs --re/--im or --origami\n")
        return EXIT_MALFORMED
    buf = io.StringIO()
    try:
        args.func(args, buf)
    except (InvalidInput, ori.DisconnectedOrigami, pairs.NotComparable) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (ser.SchemaError, ValueError, TypeError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    stdout.write(buf.getvalue())
    return 0


if __name__ == "__main__":
    sys.exit(main())
