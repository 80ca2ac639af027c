"""Write an ``ell,a_ell`` trace table for 11a1 from its eta-product q-expansion.

    python3 scripts/make_trace_table.py --p 7 --bound 1e6 --output data/11a1_p7.csv
"""

import argparse
import time

from selmer_stability.config import parse_int
from selmer_stability.frobenius import write_trace_table
from selmer_stability.qexp import ETA_11A, eta_product_traces


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=parse_int, default=7)
    parser.add_argument("--bound", type=parse_int, default=10**6)
    parser.add_argument("--output", required=True)
    parser.add_argument("--reduce", action="store_true", help="store a_ell mod p instead of a_ell")
    args = parser.parse_args()

    start = time.perf_counter()
    traces = eta_product_traces(ETA_11A, args.bound)
    traces.pop(11, None)  # bad prime
    if args.reduce:
        traces = {ell: a % args.p for ell, a in traces.items()}
    write_trace_table(args.output, args.p, traces, f"11a1 = eta(z)^2 eta(11z)^2, primes <= {args.bound}")
    print(f"{len(traces)} primes written to {args.output} in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
