"""Print verdict, rule and order for the fixture pairs used by the tests."""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from fixtures import AXIS_INFINITE, DENSE_ALGEBRAIC, DENSE_IRRATIONAL, DENSE_RATIONAL, FINITE  # noqa: E402

from holonomy.classify import classify, verify_certificate  # noqa: E402
from holonomy.rotation import build_pair  # noqa: E402
from holonomy.scalar import parse_angle  # noqa: E402


def main():
    specs = list(FINITE) + DENSE_RATIONAL + DENSE_ALGEBRAIC + AXIS_INFINITE + DENSE_IRRATIONAL
    print(f"{'pair':64s} {'verdict':20s} {'order':>5s}  {'verified':8s} {'rule'}")
    for spec in specs:
        t = time.time()
        rep = classify(build_pair(*map(parse_angle, spec)))
        ok = verify_certificate(rep).ok if rep.is_decided else False
        label = ", ".join(spec)
        print(f"{label:64s} {rep.verdict:20s} {str(rep.order or '-'):>5s}  {str(ok):8s} "
              f"{rep.certificate.rule} ({time.time() - t:.2f}s)")


if __name__ == "__main__":
    main()
