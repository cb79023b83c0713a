#!/usr/bin/env python3
"""Trace how the zero-residue density grows with the cutoff X.

Writes one CSV block per modulus 2^k to stdout (gnuplot-friendly: blocks
separated by blank lines) for the chosen family.
"""
import argparse

from overcubic.density import compute_density
from overcubic.etaq import Family


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", default="overcubic-triple")
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--exponents", default="1,2,3,4,5,6",
                        help="comma-separated k for moduli 2^k")
    parser.add_argument("--x-grid", default="100,300,1000,3000,10000")
    args = parser.parse_args()

    family = Family(args.family, args.k)
    grid = [int(x) for x in args.x_grid.split(",")]
    for e in (int(v) for v in args.exponents.split(",")):
        report = compute_density(family, 1 << e, 0, grid)
        print(f"# modulus 2^{e}")
        print(report.to_csv(), end="")
        print()


if __name__ == "__main__":
    main()
