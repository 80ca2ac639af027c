"""Omega fraction among unramified primes at growing bounds, against (p-3)/(p-1)^2.

    python3 scripts/chebotarev_convergence.py --p 7 --bounds 1e3,1e4,1e5
"""

import argparse
import csv
import sys
import time

from selmer_stability import CURVE_11A1, ResidualRepSpec, empirical_density
from selmer_stability.config import parse_int


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=parse_int, default=7)
    parser.add_argument("--bounds", default="1e3,1e4,1e5")
    parser.add_argument("--workers", type=parse_int, default=1)
    args = parser.parse_args()

    spec = ResidualRepSpec(args.p, 11, CURVE_11A1, surjective=True)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["bound", "omega_count", "prime_count", "fraction", "target", "deviation", "seconds"])
    for bound in (parse_int(b) for b in args.bounds.split(",")):
        start = time.perf_counter()
        est = empirical_density(spec, bound, workers=args.workers)
        out.writerow([
            bound,
            est.omega_count,
            est.prime_count,
            f"{est.fraction.numerator}/{est.fraction.denominator}",
            f"{est.target.numerator}/{est.target.denominator}",
            f"{est.deviation:.6f}",
            f"{time.perf_counter() - start:.2f}",
        ])


if __name__ == "__main__":
    main()
