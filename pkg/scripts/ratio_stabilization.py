"""Convergence of the DAGs-per-class ratio.

Tabulates a'_n / a_n and its q-Pochhammer-adjusted form at increasing n,
reporting how many leading decimal digits agree with the previous row.
The unadjusted ratio stabilizes to 13.6517978587767...; the adjusted one
sits just under 4.
"""

import argparse

from mecmc.posets import decimal_string, ratio_table


def agreed_digits(a, b):
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=200)
    ap.add_argument("--digits", type=int, default=30)
    ap.add_argument("--every", type=int, default=20,
                    help="print every k-th row")
    args = ap.parse_args()

    rows = ratio_table(args.nmax)
    print(f"{'n':>4} {'ratio':<{args.digits + 4}} {'agree':>5} adjusted")
    prev = None
    for r in rows:
        if r.n % args.every and r.n != rows[-1].n:
            continue
        cur = decimal_string(r.ratio, args.digits)
        agree = agreed_digits(prev, cur) if prev is not None else 0
        adj = decimal_string(r.adjusted, 10)
        print(f"{r.n:>4} {cur:<{args.digits + 4}} {agree:>5} {adj}")
        prev = cur


if __name__ == "__main__":
    main()
