#!/usr/bin/env python3
# Print the inferred stratum degrees next to the Euler numbers they
# reproduce, one weight per block.

import argparse

from taucycles import chi_sym_powers, infer_degrees


def fmt(lam):
    return "(" + ",".join(map(str, lam)) + ")"


def main() -> int:
    ap = argparse.ArgumentParser(
        description="tabulate stratum degrees recovered from symmetric-power Euler numbers"
    )
    ap.add_argument("--genus", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    chi = chi_sym_powers(2 - 2 * args.genus, args.max_n)
    for n in range(args.max_n + 1):
        degrees = infer_degrees(args.genus, n)
        print(f"n={n}  chi(Sym^{n})={chi[n]}")
        for lam in sorted(degrees, reverse=True):
            print(f"  d{fmt(lam)} = {degrees[lam]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
