#!/usr/bin/env python3
"""Build the rank n/2+3 example in PG(2, q^n), n = 4k+2, and run its checks."""
import argparse
import json
from pathlib import Path

from linsets.examples_bounds import check_example_new, example_new
from linsets.io import write_subspace


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=7)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=None, help="write the subspace file here")
    args = ap.parse_args()
    ex = example_new(args.q, args.k, args.seed)
    res = check_example_new(ex)
    if args.out:
        write_subspace(ex.U, args.out)
    print(json.dumps({"status": res.status, "v": list(ex.v), **res.details}, indent=2))
    return 0 if res.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
