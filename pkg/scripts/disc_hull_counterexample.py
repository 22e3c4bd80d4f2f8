"""A Larman point need not come from a body of revolution.

Usage: python scripts/disc_hull_counterexample.py [--r2 R] [--planes N] [--axes N]

The convex hull of two orthogonal discs has every central section
symmetric about a line, so the center passes the Larman-point test, yet no
line through the center is an axis of revolution.  The script prints the
Larman residual and the revolution residual for a sample of candidate axes.
"""

import argparse

from tomoscope import bodies
from tomoscope.geomcore import LineD
from tomoscope.numerics import fibonacci_sphere
from tomoscope.tomography import certify_body_of_revolution, larman_point_test


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r2", type=float, default=1.0, help="radius of the second disc")
    ap.add_argument("--planes", type=int, default=200)
    ap.add_argument("--axes", type=int, default=16)
    ap.add_argument("--tol", type=float, default=5e-3)
    args = ap.parse_args()

    K = bodies.two_disc_hull(1.0, args.r2)
    lar = larman_point_test(K, [0, 0, 0], args.planes, args.tol, 512)
    print(f"larman test at the center: passed={lar.passed} residual={lar.residual:.2e}")
    axes = fibonacci_sphere(2 * args.axes)
    axes = axes[axes[:, 2] >= 0][: args.axes]
    print(f"{'axis':<28} {'passed':<7} {'residual':>9}")
    for a in axes:
        c = certify_body_of_revolution(K, LineD([0, 0, 0], a), 8, args.tol, 256)
        print(f"({a[0]:+.3f}, {a[1]:+.3f}, {a[2]:+.3f})      {str(c.passed):<7} {c.residual:>9.3f}")


if __name__ == "__main__":
    main()
