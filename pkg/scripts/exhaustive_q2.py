#!/usr/bin/env python3
"""Weight spectra and the mass formula over every F_2-subspace with rn <= 6."""
import argparse
from collections import Counter

from linsets.field_tower import make_tower
from linsets.fq_linalg import all_subspaces
from linsets.linset_core import linear_set


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rn", type=int, default=6)
    args = ap.parse_args()
    for n in range(1, args.max_rn // 2 + 1):
        T = make_tower(2, 1, n)
        for r in range(2, args.max_rn // n + 1):
            for m in range(1, r * n + 1):
                spectra = Counter()
                bad = 0
                for U in all_subspaces(T, r, m):
                    L = linear_set(U)
                    bad += L.mass() != 2**m - 1
                    spectra[tuple(sorted(L.spectrum().items()))] += 1
                print(f"n={n} r={r} m={m}: {sum(spectra.values())} subspaces, "
                      f"{len(spectra)} spectra, mass mismatches {bad}")
                for spec, c in sorted(spectra.items(), key=lambda kv: -kv[1])[:4]:
                    print(f"    {c:6d} x {dict(spec)}")


if __name__ == "__main__":
    main()
