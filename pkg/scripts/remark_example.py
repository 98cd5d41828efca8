#!/usr/bin/env python3
"""The rank-5 subspace {(x, y) : x, y in F_{q^3}, Tr(y) = 0} of F_{q^6}^2 and its cyclic model."""
import argparse
import json

from linsets.cyclic_model import check_projection, check_thm_final, decompose
from linsets.examples_bounds import remark_example
from linsets.linset_core import field_of_linearity_by_closure, linear_set


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=2)
    args = ap.parse_args()
    U = remark_example(args.q)
    L = linear_set(U)
    dec = decompose(U)
    S = dec.state
    out = {
        "q": args.q,
        "size": len(L),
        "spectrum": dict(sorted(L.spectrum().items())),
        "field_of_linearity": field_of_linearity_by_closure(U, L).degree,
        "decomposition": dec.summary(),
        "U0_fixed_by": [k for k in range(1, S.n + 1)
                        if S.sigma_subspace(dec.Ui[0], k) == dec.Ui[0]],
        "projection": check_projection(dec).status,
        "final": check_thm_final(U, dec, L).status,
    }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
