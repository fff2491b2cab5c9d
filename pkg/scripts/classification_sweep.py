"""Classify all labeled DAGs on n vertices into Markov equivalence classes.

Prints the class-size histogram, the totals against the recursion values,
and the share of singleton classes (DAGs that are their own essential
graph).
"""

import argparse
from collections import Counter

from mecmc.essential import classification_sweep
from mecmc.posets import robinson_counts, steinsky_counts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=4, choices=(1, 2, 3, 4),
                    help="vertex count (exhaustive enumeration)")
    args = ap.parse_args()

    rows = classification_sweep(args.n)
    sizes = {}
    for _, eg_id, size in rows:
        sizes[eg_id] = size
    hist = Counter(sizes.values())

    n_dags = len(rows)
    n_classes = len(sizes)
    print(f"n = {args.n}: {n_dags} DAGs in {n_classes} classes")
    print(f"{'class size':>10} {'classes':>8} {'dags':>8}")
    for size in sorted(hist):
        print(f"{size:>10} {hist[size]:>8} {size * hist[size]:>8}")

    assert n_dags == robinson_counts(args.n)[args.n]
    assert hist.get(1, 0) == steinsky_counts(args.n)[args.n]
    assert sum(s * c for s, c in hist.items()) == n_dags
    singleton_share = hist.get(1, 0) / n_classes
    print(f"singleton classes: {hist.get(1, 0)} "
          f"({singleton_share:.1%} of classes)")
    print(f"dags per class: {n_dags / n_classes:.4f}")


if __name__ == "__main__":
    main()
