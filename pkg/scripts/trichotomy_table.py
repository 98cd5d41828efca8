#!/usr/bin/env python3
"""Tabulate (case, N, s) over all F_p-linear maps of F_{p^h}."""
import argparse
from collections import Counter

from linsets.directions import all_additive_tables, direction_trichotomy, function_tower


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fields", nargs="*", default=["2:2", "2:3", "3:2"], help="p:h pairs")
    args = ap.parse_args()
    for spec in args.fields:
        p, h = (int(x) for x in spec.split(":"))
        T = function_tower(p, h)
        rows = Counter()
        for table in all_additive_tables(T):
            res = direction_trichotomy(T, table)
            rows[(res.case, res.N, res.s, res.status)] += 1
        print(f"F_{p**h}:")
        for (case, N, s, status), c in sorted(rows.items()):
            print(f"    {case}  N={N:3d}  s={s:3d}  {status}  x{c}")


if __name__ == "__main__":
    main()
