"""Success rate of word approximation on random targets."""

import argparse

import numpy as np

from holonomy.orbit import ApproxBudget, Approximator
from holonomy.rotation import build_pair, random_rotation
from holonomy.scalar import parse_angle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pair", nargs=3, default=["pi*1/2", "pi*1/2", "pi*1/4"], metavar=("THETA1", "THETA2", "PHI"))
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--epsilon", type=float, default=0.05)
    ap.add_argument("--targets", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240)
    args = ap.parse_args()
    approx = Approximator(build_pair(*map(parse_angle, args.pair)), ApproxBudget(depth=args.depth))
    rng = np.random.default_rng(args.seed)
    res = [approx.approximate(random_rotation(rng), args.epsilon) for _ in range(args.targets)]
    d = np.array([r.distance for r in res])
    lengths = np.array([len(r.word) for r in res])
    print(f"table {len(approx.table)} elements, pool {0 if approx.pool is None else len(approx.pool)}")
    print(f"converged {int((d < args.epsilon).sum())}/{args.targets} at epsilon {args.epsilon}")
    print(f"distance median {np.median(d):.4f} max {d.max():.4f}; word length median {int(np.median(lengths))}")


if __name__ == "__main__":
    main()
