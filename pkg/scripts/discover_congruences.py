#!/usr/bin/env python3
"""Scan a family for progressions with large dividing moduli.

Example:
    python scripts/discover_congruences.py --family overcubic-triple \
        --max-m 32 --moduli 2,4,8,16,32,64,128,256,384 --n-min 200
"""
import argparse

from overcubic.congruence import ScanConfig, scan
from overcubic.etaq import Family


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", default="overcubic-triple")
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--max-m", type=int, default=16)
    parser.add_argument("--moduli", default="2,4,8,16,32,64,128,256")
    parser.add_argument("--n-min", type=int, default=500)
    parser.add_argument("--min-modulus", type=int, default=4,
                        help="hide discoveries below this modulus")
    args = parser.parse_args()

    cfg = ScanConfig(
        family=Family(args.family, args.k),
        max_m=args.max_m,
        moduli=tuple(int(m) for m in args.moduli.split(",")),
        n_min=args.n_min,
    )
    claims = scan(cfg)
    shown = [c for c in claims if c.modulus >= args.min_modulus]
    print(f"# {len(claims)} discoveries, showing {len(shown)} with modulus >= {args.min_modulus}")
    for c in sorted(shown, key=lambda c: (-c.modulus, c.m, c.j)):
        print(f"  every coefficient at {c.m}n+{c.j} divisible by {c.modulus}")


if __name__ == "__main__":
    main()
