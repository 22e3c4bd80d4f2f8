"""Run the decision pipelines on the standard fixtures and tabulate verdicts.

Usage: python scripts/run_fixtures.py [--out DIR] [--quick]

Each row is one (pipeline, body, configuration) run; with --out the full
decision records are written as one JSON file per row.
"""

import argparse
import json
import time
from pathlib import Path

import numpy as np

from tomoscope import bodies
from tomoscope.bodies import ProfileCurve
from tomoscope.config import Budgets
from tomoscope.geomcore import LineD
from tomoscope.tomography import (
    theorem1_decide,
    theorem2_decide,
    theorem3_decide,
    theorem45_decide,
    theorem7_decide,
)

HERE = Path(__file__).resolve().parent


def load(name):
    return bodies.construct(json.loads((HERE / "bodies" / f"{name}.json").read_text()))


def fixtures():
    ball, rev, tri = load("ball1"), load("rev_z"), load("ellipsoid123")
    blob = bodies.perturbed_ellipsoid([1.0, 1.2, 1.4], 0.05, seed=2)
    e4 = load("ellipsoid4_2111")
    L = LineD([0, 0.9, 0], [1, 0, 0])
    z = LineD([0, 0, 0], [0, 0, 1])
    yield "theorem1", "ball1", lambda b: theorem1_decide(ball, [0.3, 0, 0], L, budgets=b)
    yield "theorem1", "ellipsoid123", lambda b: theorem1_decide(tri, [0.3, 0, 0], L, budgets=b)
    yield "theorem1", "blob", lambda b: theorem1_decide(blob, [0.2, 0, 0], L, budgets=b)
    yield "theorem2", "rev_z", lambda b: theorem2_decide(rev, [0, 0, 0.3], budgets=b)
    yield "theorem2", "ball1+q", lambda b: theorem2_decide(ball, [0.2, 0, 0], budgets=b, q=np.array([0, 0.2, 0]))
    yield "theorem2", "ellipsoid123", lambda b: theorem2_decide(tri, [0.3, 0, 0], budgets=b)
    yield "theorem3", "rev_z", lambda b: theorem3_decide(rev, z, budgets=b)
    yield "theorem3", "ellipsoid123", lambda b: theorem3_decide(tri, LineD([0, 0.5, 0], [1, 0, 0.3]), budgets=b)
    yield "theorem45", "ellipsoid4_2111", lambda b: theorem45_decide(e4, "sections", np.array([0, 0.3, 0, 0]), budgets=b)
    yield "theorem45", "ellipsoid4_2111/proj", lambda b: theorem45_decide(e4, "projections", budgets=b)
    yield "theorem7", "rev_z", lambda b: theorem7_decide(rev, [0.3, 0, 0.2], z, budgets=b)
    yield "theorem7", "ellipsoid123", lambda b: theorem7_decide(tri, [0.3, 0, 0.2], z, budgets=b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="directory for per-run JSON records")
    ap.add_argument("--quick", action="store_true", help="small budgets for a smoke run")
    args = ap.parse_args()
    budgets = Budgets()
    if args.quick:
        budgets = Budgets(m=256, n_planes=12, n_theta=8, n_phi=8, n_dirs=24, n_boundary=4000,
                          n_hyperplanes=8, n_sub_planes=6)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    print(f"{'pipeline':<10} {'body':<22} {'verdict':<22} {'residual':>10} {'time':>7}")
    for pipeline, name, fn in fixtures():
        t0 = time.perf_counter()
        d = fn(budgets)
        dt = time.perf_counter() - t0
        print(f"{pipeline:<10} {name:<22} {d.verdict.value:<22} {d.residual:>10.2e} {dt:>6.1f}s")
        if args.out:
            slug = f"{pipeline}_{name.replace('/', '_').replace('+', '_')}.json"
            (args.out / slug).write_text(json.dumps(d.to_dict(), sort_keys=True, indent=2))


if __name__ == "__main__":
    main()
