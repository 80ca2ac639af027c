"""Serre-shape ratio r(Y) = M_Omega(Y) / (Y (log Y)^(delta - 1)) for 11a1 mod p.

Traces come from the eta-product expansion, so the curve reaches 10^6 and
beyond without point counting.

    python3 scripts/census_curve.py --p 7 --checkpoints 1e3,1e4,1e5,1e6
"""

import argparse
import csv
import sys

from selmer_stability import ResidualRepSpec, census_ratios, omega_density_closed_form, sieve_omega
from selmer_stability.config import parse_int
from selmer_stability.frobenius import TraceTable
from selmer_stability.qexp import ETA_11A, eta_product_traces


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=parse_int, default=7)
    parser.add_argument("--checkpoints", default="1e3,1e4,1e5,1e6")
    args = parser.parse_args()

    checkpoints = [parse_int(c) for c in args.checkpoints.split(",")]
    top = checkpoints[-1]
    traces = {ell: a for ell, a in eta_product_traces(ETA_11A, top).items() if ell != 11}
    spec = ResidualRepSpec(args.p, 11, TraceTable.from_traces(args.p, traces), surjective=True)
    omega = sieve_omega(spec, top).primes
    delta = omega_density_closed_form(args.p)
    curve = census_ratios(omega, delta, checkpoints)

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["Y", "M_omega", "ratio"])
    for pt in curve.points:
        out.writerow([pt.Y, pt.count, f"{pt.ratio:.6f}"])
    print(f"# |Omega <= {top}| = {len(omega)}, delta = {delta}, "
          f"max/min over last three = {curve.spread:.6f}, stable = {curve.stable}", file=sys.stderr)


if __name__ == "__main__":
    main()
