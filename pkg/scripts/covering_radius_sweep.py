"""Covering radius against word depth for a few pairs, as CSV on standard output."""

import argparse

from holonomy.orbit import GENERIC_POINT, enumerate_orbit
from holonomy.rotation import build_pair
from holonomy.scalar import parse_angle

PAIRS = {
    "dense": ("pi*1/2", "pi*1/2", "pi*1/4"),
    "dense_algebraic": ("pi", "pi*1/3", "acos(sqrt(1/3))"),
    "finite": ("pi", "pi*1/2", "pi*1/4"),
    "axis_infinite": ("pi", "pi", "acos(1/3)"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    print("pair,depth,covering_radius,points")
    for name, spec in PAIRS.items():
        rep = enumerate_orbit(build_pair(*map(parse_angle, spec)), GENERIC_POINT, args.depth, threads=args.threads)
        for d, r in rep.radius_trace:
            print(f"{name},{d},{r:.12f},{len(rep.points_at_depth(d))}")


if __name__ == "__main__":
    main()
