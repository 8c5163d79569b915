#!/usr/bin/env python3
"""Theta partial sums for the hyperbolic plane at a grid of bounds,
showing convergence alongside the Gaussian tail estimate.

Usage: python3 scripts/theta_demo.py [--tau RE+IMi] [--max-bound B]
"""

import argparse
import sys
from fractions import Fraction

from thomform.theta import (
    LatticeSpec,
    diagonalize_gram,
    key_str,
    theta_partial_sum,
)


def parse_tau(text: str) -> complex:
    return complex(text.replace("i", "j").replace(" ", ""))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tau", type=parse_tau, default=0.25 + 1.0j)
    parser.add_argument("--max-bound", type=int, default=8)
    args = parser.parse_args()

    spec = LatticeSpec(
        "hyperbolic-plane", 1, 1,
        ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))),
    )
    dl = diagonalize_gram(spec)
    print(f"lattice: {spec.label}, gram [[0,1],[1,0]], tau = {args.tau}")
    print(f"{'bound':>5s} {'vectors':>8s} {'tail estimate':>14s}  coefficients")
    from thomform.theta import enumerate_vectors

    for bound in range(args.max_bound + 1):
        sums, tail = theta_partial_sum(dl, args.tau, float(bound))
        count = len(enumerate_vectors(dl, float(bound)))
        coeffs = ", ".join(
            f"{key_str(k)}: {v.real:+.6e}{v.imag:+.6e}i"
            for k, v in sorted(sums.items())
        )
        print(f"{bound:5d} {count:8d} {tail:14.3e}  {coeffs}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
