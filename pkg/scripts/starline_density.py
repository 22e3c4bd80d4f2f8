"""Closure and density of starlines generated by two concurrent lines.

Usage: python scripts/starline_density.py [--max-iter N] [--csv FILE]

For an angle delta between the generating lines, the orbit closes when
delta/pi is rational and fills the pencil otherwise.  The table reports the
period or the largest angular gap after N reflections, next to the
classification from continued fractions.
"""

import argparse
import math

from tomoscope.geomcore import classify_starline_angle, starline_generate

DELTAS = [
    ("pi/5", math.pi / 5),
    ("pi/7", math.pi / 7),
    ("2pi/9", 2 * math.pi / 9),
    ("pi/12", math.pi / 12),
    ("1 rad", 1.0),
    ("sqrt2 rad", math.sqrt(2)),
    ("golden*pi", math.pi * (math.sqrt(5) - 1) / 2),
    ("0.1 rad", 0.1),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-iter", type=int, default=500)
    ap.add_argument("--csv", help="write the table as CSV")
    args = ap.parse_args()

    rows = []
    print(f"{'delta':<11} {'closed':<7} {'period':>6} {'max gap':>9} {'iters':>6}  class")
    for name, delta in DELTAS:
        s = starline_generate(0.0, delta, max_iter=args.max_iter)
        c = classify_starline_angle(delta)
        rows.append((name, delta, s.closed, s.period, s.max_gap, s.iterations, str(c)))
        print(f"{name:<11} {str(s.closed):<7} {s.period or '-':>6} {s.max_gap:>9.5f} {s.iterations:>6}  {str(c)}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("delta_name,delta,closed,period,max_gap,iterations,class\n")
            for r in rows:
                fh.write(",".join("" if v is None else str(v) for v in r) + "\n")


if __name__ == "__main__":
    main()
