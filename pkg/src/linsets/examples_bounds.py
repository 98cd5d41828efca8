"""Named constructions and the size-bound checks for linear sets."""
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolated, SizeMismatch
from .field_tower import tower_for
from .fq_linalg import span
from .linset_core import (
    all_points, field_of_linearity_by_closure, linear_set, meet_dim, num_points,
)
from .verification import VerificationOutcome, outcome


def trace_zero(T, d):
    """Elements of F_{q^d} with Tr_{q^d/q} = 0."""
    out = []
    for y in T.subfield_elements(d):
        acc = 0
        for i in range(d):
            acc = T.add(acc, T.frobenius(y, i))
        if acc == 0:
            out.append(y)
    return out


def remark_example(q):
    """{(x, y) : x, y in F_{q^3}, Tr(y) = 0} inside F_{q^6}^2, rank 5."""
    T = tower_for(q, 6)
    g = T.subfield_generator(3)
    cube = [T.pow(g, j) for j in range(3)]
    U = span(T, 2, [(x, 0) for x in cube] + [(0, y) for y in trace_zero(T, 3)], 1)
    if U.fq_dim != 5:
        raise AssertionError(f"expected rank 5, got {U.fq_dim}")
    if linear_set(U).min_weight() < 2:
        raise AssertionError("a point of weight 1 appeared")
    return U


@dataclass
class ExampleNew:
    U: object
    V: object
    v: tuple
    q: int
    k: int
    LU: object = None
    checks: dict = field(default_factory=dict)


def example_new(q, k=1, seed=0):
    """Rank n/2+3 subspace of F_{q^n}^3, n = 4k+2, with no F_q-subline secants."""
    n = 4 * k + 2
    if q < n:
        raise HypothesisViolated(f"needs q >= n = {n}")
    T = tower_for(q, n)
    h = n // 2
    g = T.subfield_generator(h)
    half = [T.pow(g, j) for j in range(h)]
    V = span(T, 3, [(x, 0, 0) for x in half] + [(0, x, 0) for x in half[:2]], 1)
    rng = np.random.default_rng(seed)
    a, b = (int(x) for x in rng.integers(0, T.order, 2))
    v = (a, b, 1)
    U = span(T, 3, list(V.vectors()) + [v], 1)
    return ExampleNew(U, V, v, q, k)


def secant_sizes(T, LU):
    """Sizes of lines meeting L_U in >= 2 points, via the points of L_U on X_2 = 0.

    Every such line passes through a point of L_U on X_2 = 0 when the points
    off that line have weight 1 and pairwise span meets it inside L_U; the
    caller checks that hypothesis.
    """
    on = np.array([P for P in LU.weights if P[2] == 0], dtype=np.int64)
    off = np.array([P for P in LU.weights if P[2] != 0], dtype=np.int64)
    # rescale so the last coordinate is 1
    zinv = T.inv_np(off[:, 2])
    off = np.stack([T.mul_np(off[:, 0], zinv), T.mul_np(off[:, 1], zinv)], axis=1)
    sizes = Counter()
    for a, b, _ in on.tolist():
        key = T.add_np(T.mul_np(np.full(len(off), b), off[:, 0]),
                       T.mul_np(np.full(len(off), T.neg(a)), off[:, 1]))
        _, counts = np.unique(key, return_counts=True)
        for c in counts.tolist():
            sizes[c + 1] += 1
    return sizes


def check_example_new(ex):
    T = ex.U.tower
    q, n = ex.q, T.n
    LU = ex.LU = linear_set(ex.U)
    on = {P: w for P, w in LU.weights.items() if P[2] == 0}
    off = {P: w for P, w in LU.weights.items() if P[2] != 0}
    sizes = secant_sizes(T, LU)
    sub_exps = set()
    for s in sizes:
        j = 0
        while q**j < s - 1:
            j += 1
        sub_exps.add(j if q**j == s - 1 else None)
    fol = field_of_linearity_by_closure(ex.U, LU)
    checks = {
        "rank": ex.U.fq_dim == n // 2 + 3,
        "size_formula": len(LU) == q**(n // 2 + 2) + q**(n // 2) + 1,
        "off_line_weight_1": set(off.values()) == {1},
        "weight_2_on_line": 2 in on.values(),
        "on_line_weights": set(on.values()) <= set(range(2, n // 2 + 1)),
        "no_subline_secant": None not in sub_exps and min(sub_exps, default=2) >= 2,
        "has_q2_secant": q**2 + 1 in sizes,
        "linearity_one": fol.degree == 1,
    }
    ex.checks = checks
    return outcome("example_new", all(checks.values()), ex.U, size=len(LU),
                   secant_sizes=sorted(sizes), field_of_linearity=fol.degree, **checks)


def check_lemma_nw(W, n):
    """W over F_{q^d} in PG(1, q^{mn}) with |L_W| = q^n + 1 must have d | n."""
    T = W.tower
    if W.r != 2 or T.n % n:
        raise HypothesisViolated("needs a line PG(1, q^{mn})")
    L = linear_set(W)
    if len(L) != T.q**n + 1:
        raise SizeMismatch(f"|L_W| = {len(L)} is not q^n + 1 = {T.q**n + 1}")
    if T.q < T.n:
        return VerificationOutcome("lemma_nw", "hypothesis_unmet", details={"q": T.q, "mn": T.n})
    return outcome("lemma_nw", n % W.e == 0, W, d=W.e, n=n)


def lines_through(T, r, P):
    """Second generators D with <P, D> running over all lines through P."""
    i0 = next(i for i, x in enumerate(P) if x)
    for D in all_points(T, r - 1):
        yield D[:i0] + (0,) + D[i0:]


def check_size_bounds(U, LU=None):
    """Counting identity through a weight-1 point, then the size lower bounds.

    The identity is pure counting and is asserted whenever a weight-1 point
    exists; the bounds additionally need F_q as the field of linearity.
    """
    T = U.tower
    q, n, r, m = T.q, T.n, U.r, U.fq_dim
    LU = LU if LU is not None else linear_set(U)
    ones = [P for P, w in LU.weights.items() if w == 1]
    if not ones:
        return VerificationOutcome("size_bounds", "hypothesis_unmet", details={"weight_1": 0})
    P = ones[0]
    details = {"size": len(LU), "point": list(P)}
    hs = []
    if r > 2:
        hs = [meet_dim(U, [P, D]) for D in lines_through(T, r, P)]
        details["identity"] = sum(q**h - q for h in hs) == q**m - q
        if not details["identity"]:
            return outcome("size_bounds", False, U, **details)
    fol = field_of_linearity_by_closure(U, LU)
    if fol.degree != 1:
        return VerificationOutcome("size_bounds", "hypothesis_unmet",
                                   details={"field_of_linearity": fol.degree, **details})
    details["unproven_maximal"] = fol.unproven_maximal
    if r == 2:
        bound = q**(m - 1) + 1
        return outcome("size_bounds", len(LU) >= bound, U, bound=bound,
                       tight=len(LU) == bound, **details)
    k = m - (r - 2) * n
    bound = 1 + sum(q**(h - 1) for h in hs if h >= 2)
    ok = len(LU) >= bound
    details.update(bound=bound, k=k, lines=len(hs))
    if k >= 2:
        closed = q**((r - 2) * n + k - 1) + num_points(T, r - 1)
        details["closed_form"] = closed
        ok = ok and len(LU) >= closed
    return outcome("size_bounds", ok, U, **details)


def theta_identity(U, P):
    """Sum over lines through P of (q^{h_i} - q), and the right-hand side q^m - q."""
    T = U.tower
    hs = [meet_dim(U, [P, D]) for D in lines_through(T, U.r, P)]
    return sum(T.q**h - T.q for h in hs), T.q**U.fq_dim - T.q
