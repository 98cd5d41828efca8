"""Directions determined by F_q-subspaces of affine space.

A subspace U of F_{q^n}^r is read as a point set of AG(r, q^n) through the
embedding x -> (1, x) into PG(r, q^n); the hyperplane at infinity is
X_0 = 0, so an ideal point is stored as (0, x_1, ..., x_r).
"""
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolated, NotAdditive
from .field_tower import make_tower
from .fq_linalg import is_linear_over, linearity_degree, scalar_span_over, span
from .linset_core import (
    enumerate_vectors, linear_set, normalize_rows, weight_by_rank,
)
from .verification import VerificationOutcome, outcome

PAIRWISE_LIMIT = 2**10


@dataclass(frozen=True)
class DirectionSet:
    points: frozenset  # projective points of PG(r-1, q^n), normalized
    r: int

    @property
    def ideal_points(self):
        return frozenset((0,) + P for P in self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, P):
        return P in self.points


def pairwise_directions(U):
    """dir(U) straight from the definition: all P - Q with P != Q."""
    T = U.tower
    vals = enumerate_vectors(U)
    if len(vals) > PAIRWISE_LIMIT:
        raise HypothesisViolated(f"{len(vals)} affine points exceed the pairwise oracle limit")
    found = set()
    neg = np.array([T.neg(x) for x in range(T.order)], dtype=np.int64)
    for i in range(len(vals)):
        diffs = T.add_np(vals, neg[vals[i]][None, :])
        diffs = np.delete(diffs, i, axis=0)
        if len(diffs):
            found.update(map(tuple, np.unique(normalize_rows(T, diffs), axis=0).tolist()))
    return found


def dir_set(U, check=False):
    """Directions of U via the subspace shortcut (differences lie in U).

    With ``check=True`` the pairwise definition is evaluated as well and
    the two must agree.
    """
    pts = frozenset(linear_set(U).weights)
    if check:
        other = pairwise_directions(U)
        if other != pts:
            raise AssertionError("pairwise and subspace direction sets differ")
    return DirectionSet(pts, U.r)


def line_profile(U):
    """{w: number of lines through the origin meeting U in q^w points}."""
    prof = Counter()
    for P in dir_set(U).points:
        prof[weight_by_rank(U, P)] += 1
    return dict(sorted(prof.items()))


def min_line_exponent(U):
    prof = line_profile(U)
    return min(prof) if prof else None


def check_dir_theorem(U, mode):
    T = U.tower
    n, q, m = T.n, T.q, U.fq_dim
    if mode == "a":
        if m % n:
            raise HypothesisViolated("mode a needs n | m")
    elif mode == "b":
        if q < n:
            raise HypothesisViolated("mode b needs q >= n")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    name = f"directions_{mode}"
    w = min_line_exponent(U)
    if w is None or w < 2:
        return VerificationOutcome(name, "vacuous", details={"w": w})
    if mode == "a":
        divides = n % w == 0
        largest = divides and linearity_degree(U) == w
        return outcome(name, divides and largest, U, w=w, divides=divides, largest=largest)
    D = dir_set(U).points
    for d in sorted(T.divisors, reverse=True):
        if d < w:
            break
        if dir_set(scalar_span_over(U, d)).points == D:
            return outcome(name, True, U, w=w, d=d)
    return outcome(name, False, U, w=w, d=None)


# -- additive functions on F_Q ---------------------------------------------

def function_tower(p, h):
    return make_tower(p, 1, h)


def as_table(table):
    """A function table as a dict x -> f(x); lists are read as [f(0), f(1), ...]."""
    return table if isinstance(table, dict) else dict(enumerate(table))


def check_additive(T, table):
    Q = T.order
    table = as_table(table)
    if sorted(table) != list(range(Q)):
        raise NotAdditive("table must give f(x) for every field element x once")
    if table[0] != 0:
        raise NotAdditive("f(0) must be 0")
    basis_img = [table[T.p**k] for k in range(T.degree)]
    for x in range(Q):
        acc = 0
        for k, c in enumerate(T.digits_np(np.array([x]))[0].tolist()):
            for _ in range(c):
                acc = T.add(acc, basis_img[k])
        if acc != table[x]:
            raise NotAdditive(f"f is not additive at x={x}")


def all_additive_tables(T):
    """Every F_p-linear map F_Q -> F_Q, indexed by the images of the basis t^k."""
    Q, D = T.order, T.degree
    xs = np.arange(Q)
    digs = T.digits_np(xs)
    for imgs in np.ndindex(*([Q] * D)):
        acc = np.zeros(Q, dtype=np.int64)
        for k, y in enumerate(imgs):
            if y:
                for c in range(1, T.p):
                    mask = digs[:, k] == c
                    acc[mask] = T.add_np(acc[mask], np.full(mask.sum(), T.mul(c, y)))
        yield dict(zip(xs.tolist(), acc.tolist()))


def graph_of_table(T, table):
    return span(T, 2, [(T.p**k, table[T.p**k]) for k in range(T.degree)], 1)


@dataclass
class Trichotomy:
    Q: int
    N: int
    s: int
    e: int
    case: str
    bounds: tuple
    status: str
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"N": self.N, "s": self.s, "case": self.case, "bounds": list(self.bounds),
                "status": self.status, **self.details}


def direction_trichotomy(T, table):
    """Classify an additive f on F_Q by (N, s), with s from the line intersection sizes."""
    table = as_table(table)
    check_additive(T, table)
    p, Q, h = T.p, T.order, T.degree
    xs = np.arange(Q, dtype=np.int64)
    fx = np.array([table[x] for x in range(Q)], dtype=np.int64)
    nz = xs[1:]
    slopes = np.unique(T.mul_np(fx[1:], T.inv_np(nz)))
    N = len(slopes)
    # a line of slope m meets the graph in 0 or |ker(f - m x)| points
    kernel_sizes = [int(np.count_nonzero(T.mul_np(np.full(Q, m), xs) == fx)) for m in slopes.tolist()]
    s = min(kernel_sizes)
    e = 0
    while p**e < s:
        e += 1
    case1 = s == 1 and (Q + 3) / 2 <= N <= Q + 1
    case2 = 1 < s and h % e == 0 and Q // s + 1 <= N <= (Q - 1) // (s - 1)
    case3 = s == Q and N == 1
    hits = [c for c, ok in (("case1", case1), ("case2", case2), ("case3", case3)) if ok]
    if case1:
        bounds = ((Q + 3) / 2, Q + 1)
    elif s > 1:
        bounds = (Q // s + 1, (Q - 1) // (s - 1)) if s < Q else (1, 1)
    else:
        bounds = ()
    linear = True
    if s > 2 and h % e == 0:
        linear = is_linear_over(graph_of_table(T, table), e)
    ok = len(hits) == 1 and linear
    return Trichotomy(Q, N, s, e, hits[0] if len(hits) == 1 else "none", bounds,
                      "pass" if ok else "fail", {"graph_linear": linear})
