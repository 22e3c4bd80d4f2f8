"""Tabulate the distance/angle diagnostics f and g over the pinned-plane pencil.

Usage: python scripts/fg_profiles.py [--body FILE] [--point x,y,z] [--line px,py,pz,dx,dy,dz]
                                     [--n-theta N] [--n-phi N] [--out DIR]

For each theta, f(phi) is the distance from z = D ∩ E to L(theta) and g(phi)
the angle between D and E.  The located zeros of f and the fraction of planes
where both lines coincide with L(theta) are printed; --out writes one CSV per
theta.
"""

import argparse
import json
import math
from pathlib import Path

import numpy as np

from tomoscope import bodies
from tomoscope.geomcore import LineD
from tomoscope.tomography import fg_profile
from tomoscope.tomography.survey import theta_grid

HERE = Path(__file__).resolve().parent


def floats(text, n):
    vals = [float(x) for x in text.split(",")]
    if len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers")
    return vals


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--body", type=Path, default=HERE / "bodies" / "ball1.json")
    ap.add_argument("--point", type=lambda s: floats(s, 3), default=[0.3, 0.0, 0.0])
    ap.add_argument("--line", type=lambda s: floats(s, 6), default=[0, 0.9, 0, 1, 0, 0])
    ap.add_argument("--n-theta", type=int, default=8)
    ap.add_argument("--n-phi", type=int, default=24)
    ap.add_argument("--samples", type=int, default=256)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    K = bodies.construct(json.loads(args.body.read_text()))
    L = LineD(args.line[:3], args.line[3:])
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    print(f"{'theta':>8} {'zeros of f':<30} {'min g':>9} {'case I':>7}")
    for k, theta in enumerate(theta_grid(args.n_theta)):
        prof = fg_profile(K, args.point, L, theta, n_phi=args.n_phi, m=args.samples)
        zeros = ", ".join(f"{z:.4f}" for z in prof.zeros) or "-"
        g = np.asarray(prof.g, dtype=float)
        min_g = float(np.nanmin(g)) if np.isfinite(g).any() else math.nan
        print(f"{theta:>8.4f} {zeros:<30} {min_g:>9.2e} {prof.case_one_fraction:>7.2f}")
        if args.out:
            (args.out / f"fg_{k:02d}.csv").write_text(prof.to_csv())


if __name__ == "__main__":
    main()
