"""``tomoscope`` batch front end.

Exit codes: 0 pass/success, 2 fail (including HypothesisFailed and
ConclusionFailed), 1 usage or input error (one line on stderr).
"""

import argparse
import dataclasses
import datetime
import json
import math
import os
import sys
import tempfile
import time

import jsonschema
import numpy as np

from .. import bodies
from ..config import Budgets, ToleranceLadder, load_config
from ..errors import TomoscopeError
from ..geomcore import LineD, PlaneD, classify_starline_angle, starline_generate, unit
from ..numerics import fit_plane, orthonormal_complement
from ..slicing import project, section
from ..symmetry2d import find_symmetry_lines
from ..tomography import certify, loci, theorems
from .schema import BODY_SCHEMA
from .svg import cloud_svg, planar_svg

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# parsing helpers --------------------------------------------------------------

def floats(text, n=None, what="value"):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) not in (n if isinstance(n, tuple) else (n,)):
        raise UsageError(f"{what}: expected {n} numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what}: values must be finite")
    return np.array(vals)


def parse_plane(text):
    v = floats(text, (4, 5), "--plane")
    return PlaneD(v[:-1], v[-1])


def parse_line(text):
    v = floats(text, (6, 8), "--line")
    h = len(v) // 2
    return LineD(v[:h], v[h:])


def load_body(path):
    if path is None:
        raise UsageError("--body is required for this command")
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        jsonschema.validate(spec, BODY_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise UsageError(f"{path}: schema violation at {where}: {exc.message}") from None
    return spec, bodies.construct(spec)


def need(args, name):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this command")
    return val


# output ---------------------------------------------------------------------------

def to_jsonable(x):
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return to_jsonable(x.tolist())
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    return x


def atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Outputs:
    def __init__(self, args):
        self.args = args
        self.paths = []

    def emit(self, name, text, kind):
        if not getattr(self.args, kind):
            return
        path = os.path.join(self.args.out or os.curdir, name)
        atomic_write(path, text)
        self.paths.append(path)


# commands: each returns (result dict, passed) ----------------------------------------

def cmd_section(args, K, tols, bud, out):
    plane = parse_plane(need(args, "plane"))
    if K.dim == 4:
        from ..slicing import hypersection
        S = hypersection(K, plane)
        return {"dim": 3, "frame": _frame(S.frame), "steiner_point": None}, True
    P = section(K, plane, bud.m)
    out.emit("section.svg", planar_svg(P), "svg")
    out.emit("section.csv", P.to_csv(), "csv")
    return _planar_summary(P), True


def cmd_project(args, K, tols, bud, out):
    u = floats(need(args, "direction"), 3, "--direction")
    P = project(K, u, bud.m)
    out.emit("projection.svg", planar_svg(P), "svg")
    out.emit("projection.csv", P.to_csv(), "csv")
    return _planar_summary(P), True


def cmd_symmetry(args, K, tols, bud, out):
    if args.plane is not None:
        P = section(K, parse_plane(args.plane), bud.m)
    elif args.direction is not None:
        P = project(K, floats(args.direction, 3, "--direction"), bud.m)
    else:
        raise UsageError("symmetry needs --plane or --direction")
    tol = tols.for_body(K)
    rep = find_symmetry_lines(P, tol)
    out.emit("symmetry.svg", planar_svg(P, [l for l, _ in rep.lines]), "svg")
    out.emit("symmetry.csv", P.to_csv(), "csv")
    return dict(rep.to_dict(), tol=tol, planar=_planar_summary(P)), bool(rep.lines or rep.is_circle)


def cmd_starline(args, K, tols, bud, out):
    a = floats(need(args, "angles"), 2, "--angles")
    st = starline_generate(a[0], a[1], args.max_iter, tols.closure)
    cls = classify_starline_angle(abs(a[1] - a[0]) % math.pi)
    res = dataclasses.asdict(st)
    res["classification"] = str(cls)
    return res, True


def cmd_midpoint_locus(args, K, tols, bud, out):
    x = floats(need(args, "point"), 3, "--point")
    loc = loci.midpoint_locus(K, x, bud.locus_circles, bud.locus_samples)
    out.emit("midpoint_locus.csv", loc.to_csv(), "csv")
    out.emit("midpoint_locus.svg", cloud_svg(_flatten(loc.points, loc.best_plane)), "svg")
    return loc.to_dict(), True


def cmd_shadow(args, K, tols, bud, out):
    u = floats(need(args, "direction"), 3, "--direction")
    sb = loci.shadow_boundary(K, u, bud.m)
    out.emit("shadow.svg", cloud_svg(_flatten(sb.points, sb.best_plane)), "svg")
    out.emit("shadow.csv", "x,y,z\n" + "".join(",".join(repr(float(c)) for c in p) + "\n" for p in sb.points), "csv")
    return sb.to_dict(), True


def cmd_larman(args, K, tols, bud, out):
    p = floats(need(args, "point"), 3, "--point")
    c = certify.larman_point_test(K, p, bud.n_planes, tols.for_body(K), bud.m)
    return c.to_dict(), c.passed


def cmd_revolution_point(args, K, tols, bud, out):
    p = floats(need(args, "point"), 3, "--point")
    c = certify.revolution_point_test(K, p, bud.n_planes, tols.for_body(K), bud.m)
    return c.to_dict(), c.passed


def cmd_certify(args, K, tols, bud, out):
    tol = tols.for_body(K)
    mode = args.mode or "sphere"
    if mode == "sphere":
        c = certify.certify_sphere(K, tol, bud.n_boundary)
    elif mode == "revolution":
        c = certify.certify_body_of_revolution(K, parse_line(need(args, "line")), bud.n_planes, tol, bud.m)
    elif mode == "axis":
        c = certify.is_axis_of_symmetry(K, parse_line(need(args, "line")), bud.n_planes, tol, bud.m)
    else:
        raise UsageError(f"certify --mode must be sphere, revolution or axis, not {mode!r}")
    return dict(c.to_dict(), mode=mode), c.passed


def _decision(d):
    return d.to_dict(), d.verdict.certified


def cmd_theorem1(args, K, tols, bud, out):
    p = floats(need(args, "point"), 3, "--point")
    return _decision(theorems.theorem1_decide(K, p, parse_line(need(args, "line")), tols, bud))


def cmd_theorem2(args, K, tols, bud, out):
    p = floats(need(args, "point"), 3, "--point")
    q = None if args.point2 is None else floats(args.point2, 3, "--point2")
    return _decision(theorems.theorem2_decide(K, p, tols, bud, q=q))


def cmd_theorem3(args, K, tols, bud, out):
    return _decision(theorems.theorem3_decide(K, parse_line(need(args, "line")), tols, bud))


def cmd_theorem45(args, K, tols, bud, out):
    mode = args.mode or "sections"
    p = None if args.point is None else floats(args.point, 4, "--point")
    return _decision(theorems.theorem45_decide(K, mode, p, tols, bud))


COMMANDS = {
    "section": (cmd_section, "planar section by a plane"),
    "project": (cmd_project, "orthogonal projection along a direction"),
    "symmetry": (cmd_symmetry, "symmetry lines of a section or projection"),
    "starline": (cmd_starline, "reflection orbit of two concurrent lines"),
    "midpoint-locus": (cmd_midpoint_locus, "endpoints of chords bisected by a point"),
    "shadow": (cmd_shadow, "shadow boundary in a direction"),
    "larman": (cmd_larman, "Larman point test"),
    "revolution-point": (cmd_revolution_point, "revolution point test"),
    "certify": (cmd_certify, "sphere / body-of-revolution / axis certification"),
    "theorem1": (cmd_theorem1, "pinned-section pipeline (sphere or revolution)"),
    "theorem2": (cmd_theorem2, "revolution-point pipeline"),
    "theorem3": (cmd_theorem3, "projection pipeline"),
    "theorem45": (cmd_theorem45, "4-D sections/projections pipeline"),
}

NO_BODY = {"starline"}


def _frame(frame):
    if frame is None:
        return None
    return {"origin": frame.origin.tolist(), "basis": frame.basis.tolist(), "normal": frame.normal.tolist()}


def _planar_summary(P):
    return {
        "m": P.m,
        "frame": _frame(P.frame),
        "steiner_point": P.steiner_point().tolist(),
        "circumradius": P.circumradius(),
        "h_min": float(P.h.min()),
        "h_max": float(P.h.max()),
        "convexity_defect": P.convexity_defect(),
    }


def _flatten(points, plane):
    """2-D coordinates of a 3-D cloud in a frame of its best plane."""
    pts = np.asarray(points, dtype=float)
    if plane is None:
        return pts[:, :2]
    basis = orthonormal_complement(plane.normal, 3)
    c = pts.mean(axis=0)
    return (pts - c) @ basis.T


def build_parser():
    common = Parser(add_help=False)
    common.add_argument("--body", help="body spec JSON file")
    common.add_argument("--plane", help="nx,ny,nz,offset (five values in R^4)")
    common.add_argument("--point", help="x,y,z (four values in R^4)")
    common.add_argument("--point2", help="second point (theorem2 sphere mode)")
    common.add_argument("--line", help="px,py,pz,dx,dy,dz")
    common.add_argument("--direction", help="dx,dy,dz")
    common.add_argument("--angles", help="two line angles in radians (starline)")
    common.add_argument("--mode", help="certify: sphere|revolution|axis; theorem45: sections|projections")
    common.add_argument("--max-iter", type=int, default=500)
    common.add_argument("--tol", type=float, help="override every rung of the tolerance ladder")
    common.add_argument("--samples", type=int, help="support samples per planar body")
    common.add_argument("--planes", type=int, help="planes per test")
    common.add_argument("--seed", type=int, help="seed for randomized sampling sets")
    common.add_argument("--config", help="JSON file with tolerances and budgets")
    common.add_argument("--out", help="output directory")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--svg", action="store_true", help="write an SVG figure to --out (default: current directory)")
    common.add_argument("--csv", action="store_true", help="write CSV data to --out (default: current directory)")
    common.add_argument("--no-timestamp", action="store_true", help="omit wall-clock fields")
    parser = Parser(prog="tomoscope", description="Sections, symmetry and certification of convex bodies.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=Parser)
    sub.required = True
    for name, (_, text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def settings(args):
    tols, bud = ToleranceLadder(), Budgets()
    if args.config:
        tols, bud = load_config(args.config)
    if args.tol is not None:
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        tols = dataclasses.replace(tols, analytic=args.tol, sampled=args.tol, hyper_axis=args.tol)
    for flag, field in (("samples", "m"), ("planes", "n_planes")):
        val = getattr(args, flag)
        if val is not None and val < 8:
            raise UsageError(f"--{flag} must be at least 8")
    bud = bud.with_overrides(m=args.samples, n_planes=args.planes, seed=args.seed)
    return tols, bud


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        tols, bud = settings(args)
        spec, K = (None, None) if args.command in NO_BODY else load_body(args.body)
        out = Outputs(args)
        t0 = time.perf_counter()
        result, passed = COMMANDS[args.command][0](args, K, tols, bud, out)
        elapsed = time.perf_counter() - t0
    except UsageError as exc:
        print(f"tomoscope: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TomoscopeError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"tomoscope: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    code = EXIT_OK if passed else EXIT_FAIL
    report = {
        "command": args.command,
        "inputs": {k: v for k, v in sorted(vars(args).items()) if k != "command" and v not in (None, False)},
        "body": spec,
        "result": result,
        "passed": passed,
        "exit_code": code,
        "tolerances": dataclasses.asdict(tols),
        "budgets": dataclasses.asdict(bud),
        "artifacts": out.paths,
    }
    if not args.no_timestamp:
        report["wall_clock_s"] = elapsed
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    text = json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"
    if args.out is not None:
        atomic_write(os.path.join(args.out, "report.json"), text)
    if args.json:
        sys.stdout.write(text)
    else:
        verdict = result.get("verdict", "pass" if passed else "fail")
        print(f"{args.command}: {verdict} (exit {code})")
    return code


def main():
    sys.exit(run())
