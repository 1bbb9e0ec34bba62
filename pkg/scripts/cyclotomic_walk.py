"""Climb the p-power cyclotomic tower and watch the torsion gap grow.

For E: y^2 = x^3 - x over Q_5 this prints one row per floor k_m =
Q_5(zeta_{5^m}): the root-of-unity level M, the rational torsion level
N, and the gap M - N.  The walk needs degree 4 * 5^(m-1) per floor, so
raise --cap (or RAMLOCK_DEGREE_CAP) to go past the first floor.

Usage: python3 scripts/cyclotomic_walk.py [--mmax 2] [--cap 24]
"""

import argparse

from ramlock.bounds import ozeki_tower
from ramlock.elliptic import WeierstrassCurve
from ramlock.localfield import make_field


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mmax", type=int, default=2)
    ap.add_argument("--cap", type=int, default=24)
    args = ap.parse_args()

    k = make_field(5, [-5, 1])
    E = WeierstrassCurve(k, [0, 0, 0, -1, 0])
    res = ozeki_tower(E, k, args.mmax, cap=args.cap)
    print(f"{'m':>3} {'M':>3} {'N':>3} {'gap':>4}")
    for m, M, N, gap in res.rows:
        print(f"{m:>3} {M:>3} {N:>3} {gap:>4}")
    if res.capped is not None:
        print(f"(degree budget reached at floor m={res.capped})")


if __name__ == "__main__":
    main()
