"""Trace duality on V = F_{q^n}^r.

A bilinear form sigma(u, v) = u M v^T over F_{q^n} (M symmetric or
alternating, invertible) induces the F_q-form Tr(sigma(u, v)).  The dual of
an F_q-subspace is its complement under the trace form; F_{q^n}-subspaces
also get the complement under sigma itself.
"""
from dataclasses import dataclass
from typing import Optional

from .errors import AmbientMismatch, NotFqnLinear, RankNotMultipleOfN
from .fq_linalg import (
    Subspace, _check_same, intersect, is_linear_over, span, vector_coords,
)
from .linalg import field_ops, nullspace, rank, rref
from .linset_core import all_points, linear_set
from .verification import VerificationOutcome, outcome


@dataclass(frozen=True)
class FormSpec:
    """Gram matrix of sigma; ``None`` means the standard dot product."""
    tower: object
    r: int
    gram: Optional[tuple] = None

    def matrix(self):
        if self.gram is None:
            return tuple(tuple(1 if i == j else 0 for j in range(self.r)) for i in range(self.r))
        return self.gram

    def validate(self):
        T = self.tower
        M = self.matrix()
        if len(M) != self.r or any(len(row) != self.r for row in M):
            raise AmbientMismatch("Gram matrix has the wrong shape")
        symmetric = all(M[i][j] == M[j][i] for i in range(self.r) for j in range(self.r))
        alternating = all(M[i][i] == 0 for i in range(self.r)) and all(
            M[i][j] == T.neg(M[j][i]) for i in range(self.r) for j in range(self.r))
        if not (symmetric or alternating):
            raise ValueError("form is not reflexive")
        if rank([list(row) for row in M], field_ops(T, T.n)) < self.r:
            raise ValueError("form is degenerate")
        return self


def standard_form(tower, r):
    return FormSpec(tower, r)


def sigma(form, u, v):
    T = form.tower
    M = form.matrix()
    acc = 0
    for i, x in enumerate(u):
        if not x:
            continue
        for j, y in enumerate(v):
            if y and M[i][j]:
                acc = T.add(acc, T.mul(T.mul(x, M[i][j]), y))
    return acc


def trace_form(u, v, form):
    if len(u) != form.r or len(v) != form.r:
        raise AmbientMismatch("vector length differs from ambient rank")
    return form.tower.rel_trace(sigma(form, u, v), 1)


def _fq_unit_vectors(T, r):
    beta = [T.pow(T.primitive, k) for k in range(T.n)]
    return [tuple(b if j == i else 0 for j in range(r)) for i in range(r) for b in beta]


def dual_subspace(U, form=None):
    """U^{tau'} = {v : Tr(sigma(u, v)) = 0 for all u in U}, over F_q."""
    T, r = U.tower, U.r
    form = form or standard_form(T, r)
    units = _fq_unit_vectors(T, r)
    # column j of the functional u is Tr(sigma(u, b_j)); coordinates follow the basis b_j
    rows = [[trace_form(u, b, form) for b in units] for u in U.fq_vectors()]
    N = r * T.n
    F = field_ops(T, 1)
    kern = nullspace(rows, F, N) if rows else [
        tuple(1 if j == i else 0 for j in range(N)) for i in range(N)]
    b, piv = rref(kern, F, N)
    return Subspace(T, r, 1, b, piv)


def _as_fqn(R):
    T = R.tower
    if R.e == T.n:
        return R
    if not is_linear_over(R, T.n):
        raise NotFqnLinear("subspace is not F_{q^n}-linear")
    return R.over(T.n)


def fqn_complement(R, form=None):
    """R^tau under sigma, as an F_{q^n}-subspace."""
    T = R.tower
    R = _as_fqn(R)
    form = form or standard_form(T, R.r)
    unit = [tuple(1 if k == j else 0 for k in range(R.r)) for j in range(R.r)]
    rows = [[sigma(form, u, ej) for ej in unit] for u in R.vectors()]
    F = field_ops(T, T.n)
    if rows:
        kern = nullspace(rows, F, R.r)
    else:
        kern = [tuple(1 if j == i else 0 for j in range(R.r)) for i in range(R.r)]
    b, piv = rref(kern, F, R.r)
    return Subspace(T, R.r, T.n, b, piv)


def hyperplanes(tower, r, form=None):
    """(point, hyperplane point^tau) pairs over all points of PG(r-1, q^n)."""
    for P in all_points(tower, r):
        yield P, fqn_complement(span(tower, r, [P], tower.n), form)


def check_pesi(U, R, form=None):
    _check_same(U, R)
    T = U.tower
    R = _as_fqn(R)
    t, s = U.fq_dim, R.dim
    lhs = intersect(dual_subspace(U, form), fqn_complement(R, form)).fq_dim - intersect(U, R).fq_dim
    rhs = U.r * T.n - t - s * T.n
    return outcome("pesi", lhs == rhs, U, t=t, s=s, lhs=lhs, rhs=rhs)


def hyperplane_meet(U, v, form=None):
    """dim_q(U ∩ <v>^tau), from the rank of u -> sigma(v, u) on U."""
    T = U.tower
    form = form or standard_form(T, U.r)
    images = [vector_coords(T, (sigma(form, v, u),), 1) for u in U.fq_vectors()]
    return U.fq_dim - (rank(images, field_ops(T, 1)) if images else 0)


def check_d2(U, form=None):
    """Hyperplane version of the weight-linearity theorem, cross-checked on the dual."""
    T = U.tower
    m, n = U.fq_dim, T.n
    if m % n:
        raise RankNotMultipleOfN(f"rank {m} is not a multiple of n={n}")
    meets = {P: hyperplane_meet(U, P, form) for P in all_points(T, U.r)}
    if any(h == m - n + 1 for h in meets.values()):
        return VerificationOutcome("d2", "hypothesis_unmet", details={"m": m, "n": n})
    excess = [h - (m - n) for h in meets.values() if h > m - n]
    d = min(excess) if excess else n
    linear = n % d == 0 and is_linear_over(U, d)
    # dual side: weights of U^{tau'} are the excesses, point by point
    D = dual_subspace(U, form)
    LD = linear_set(D)
    transported = all(LD.weights.get(P, 0) == h - (m - n) for P, h in meets.items())
    d_dual = LD.min_weight() if len(LD) else n
    dual_linear = n % d_dual == 0 and is_linear_over(D, d_dual)
    ok = linear and transported and d_dual == d and dual_linear
    return outcome("d2", ok, U, d=d, linear=linear, transported=transported,
                   d_dual=d_dual, dual_linear=dual_linear)


def check_d1(U):
    """Point version: no weight-1 point and n | m force F_{q^d}-linearity, d = min weight."""
    T = U.tower
    m, n = U.fq_dim, T.n
    if m % n:
        raise RankNotMultipleOfN(f"rank {m} is not a multiple of n={n}")
    if m == 0:
        return VerificationOutcome("d1", "vacuous", details={"m": 0})
    L = linear_set(U)
    d = L.min_weight()
    if d == 1:
        return VerificationOutcome("d1", "hypothesis_unmet", details={"d": 1})
    return outcome("d1", n % d == 0 and is_linear_over(U, d), U, d=d)
