"""The cyclic model V' = F_{q^n}^{rn} at the subspace level.

V' is the direct sum of n blocks V_0, ..., V_{n-1}, each a copy of
F_{q^n}^r.  The semilinear map sigma sends block i to block i+1 (mod n)
while raising entries to the q-th power, so its fixed vectors are
(v, v^q, ..., v^{q^{n-1}}), one for each v in V.  A subspace of V' is a
Subspace of rank rn over F_{q^n}.
"""
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisViolated, RankTooLarge
from .fq_linalg import (
    Subspace, intersect, is_subspace_of, scalar_span_over, span, subspace_sum, vector_coords,
)
from .linalg import field_ops, nullspace, rref
from .linset_core import contains_same_points, linear_set, same_linear_set
from .verification import VerificationOutcome, outcome


@dataclass(frozen=True)
class CyclicState:
    tower: object
    r: int

    @property
    def n(self):
        return self.tower.n

    @property
    def rank(self):
        return self.r * self.n

    def blocks(self, v):
        r = self.r
        return [tuple(v[i * r:(i + 1) * r]) for i in range(self.n)]

    def sigma(self, v, times=1):
        T, n = self.tower, self.n
        b = self.blocks(v)
        out = [None] * n
        for i, blk in enumerate(b):
            out[(i + times) % n] = tuple(T.frobenius(x, times) for x in blk)
        return tuple(x for blk in out for x in blk)

    def sigma_subspace(self, W, times=1):
        return span(self.tower, self.rank, [self.sigma(v, times) for v in W.vectors()], self.n)

    def embed_fix(self, v):
        T = self.tower
        return tuple(T.frobenius(x, i) for i in range(self.n) for x in v)

    def block_sum(self, indices):
        """⊕ V_j over the given block indices."""
        rn = self.rank
        units = [tuple(1 if k == j * self.r + h else 0 for k in range(rn))
                 for j in sorted(set(indices)) for h in range(self.r)]
        return span(self.tower, rn, units, self.n)

    def fix_dim(self):
        """F_q-dimension of Fix sigma, from the images of an F_q-basis of V."""
        T = self.tower
        beta = [T.pow(T.primitive, k) for k in range(self.n)]
        units = [tuple(b if j == i else 0 for j in range(self.r)) for i in range(self.r) for b in beta]
        rows = [vector_coords(T, self.embed_fix(u), 1) for u in units]
        return len(rref(rows, field_ops(T, 1), self.rank * self.n)[0])


@dataclass
class UiDecomposition:
    state: CyclicState
    U: Subspace
    Un: Subspace
    Ui: tuple
    d: int
    Ubar_parts: tuple
    Ubar: Subspace

    def summary(self):
        return {"d": self.d, "dim_Un": self.Un.dim,
                "dims_Ui": [W.dim for W in self.Ui],
                "dims_Ubar": [W.dim for W in self.Ubar_parts],
                "dim_Ubar": self.Ubar.dim}


def decompose(U):
    T = U.tower
    n, r = T.n, U.r
    if U.fq_dim > (r - 1) * n:
        raise RankTooLarge(f"rank {U.fq_dim} exceeds (r-1)n = {(r - 1) * n}")
    S = CyclicState(T, r)
    Un = span(T, S.rank, [S.embed_fix(u) for u in U.fq_vectors()], n)
    Ui = tuple(intersect(Un, S.block_sum([j for j in range(n) if j != i])) for i in range(n))
    d = next(d for d in T.divisors if S.sigma_subspace(Ui[0], d) == Ui[0])
    parts = []
    for i in range(d):
        outside = S.block_sum([h for h in range(n) if h % d != i])
        inside = S.block_sum([k for k in range(n) if k % d == i])
        parts.append(intersect(subspace_sum(Un, outside), inside))
    Ubar = parts[0]
    for W in parts[1:]:
        Ubar = subspace_sum(Ubar, W)
    return UiDecomposition(S, U, Un, Ui, d, tuple(parts), Ubar)


def pullback(dec, W=None):
    """{v in V : embed_fix(v) in W} as an F_q-subspace of V (W defaults to Ubar)."""
    S = dec.state
    T = S.tower
    W = dec.Ubar if W is None else W
    F = field_ops(T, T.n)
    ann = nullspace(W.basis, F, S.rank) if W.dim else [
        tuple(1 if k == j else 0 for k in range(S.rank)) for j in range(S.rank)]
    beta = [T.pow(T.primitive, k) for k in range(T.n)]
    units = [tuple(b if j == i else 0 for j in range(S.r)) for i in range(S.r) for b in beta]
    images = [S.embed_fix(u) for u in units]
    rows = []
    for a in ann:
        vals = []
        for y in images:
            acc = 0
            for x, z in zip(a, y):
                if x and z:
                    acc = T.add(acc, T.mul(x, z))
            vals.append(T.coords(acc, 1))
        rows.extend([[c[k] for c in vals] for k in range(T.n)])
    N = S.r * T.n
    Fq = field_ops(T, 1)
    kern = nullspace(rows, Fq, N) if rows else [
        tuple(1 if k == j else 0 for k in range(N)) for j in range(N)]
    b, piv = rref(kern, Fq, N)
    return Subspace(T, S.r, 1, b, piv)


def check_inclusion(dec):
    return outcome("cyclic_inclusion", is_subspace_of(dec.Un, dec.Ubar), dec.U, d=dec.d)


def check_projection(dec):
    X = pullback(dec)
    target = scalar_span_over(dec.U, dec.d)
    return outcome("cyclic_projection", X == target, dec.U, d=dec.d,
                   dim_pullback=X.fq_dim, dim_span=target.fq_dim)


def check_thm_final(U, dec=None, LU=None):
    """L_U == L_X for X the pullback of Ubar ∩ Fix sigma.

    Asserted when n <= q and every point has weight >= 2, the standing
    hypotheses under which the cyclic construction is made.  Cases with a
    weight-1 point are evaluated too, and the literal outcome is kept in
    ``details["literal_holds"]``.
    """
    T = U.tower
    if T.n > T.q:
        return VerificationOutcome("thm_final", "hypothesis_unmet", details={"n": T.n, "q": T.q})
    dec = dec or decompose(U)
    LU = LU if LU is not None else linear_set(U)
    X = pullback(dec)
    if is_subspace_of(U, X):
        same = contains_same_points(U, X, LU)
    else:
        same = same_linear_set(U, X)
    branch = "line" if U.r == 2 else ("rank_gt" if U.fq_dim > (U.r - 1) * dec.d else "rank_le")
    details = {"d": dec.d, "dim_pullback": X.fq_dim, "branch": branch, "literal_holds": same}
    if not len(LU) or LU.min_weight() < 2:
        return VerificationOutcome("thm_final", "hypothesis_unmet",
                                   details={"min_weight": 1, **details})
    return outcome("thm_final", same, U, **details)


def _random_nonzero_block(S, i, rng):
    T = S.tower
    while True:
        blk = [int(x) for x in rng.integers(0, T.order, S.r)]
        if any(blk):
            return blk


def _random_in(W, rng):
    T = W.tower
    acc = [0] * W.r
    for v in W.vectors():
        c = int(rng.integers(0, T.order))
        if c:
            acc = [T.add(a, T.mul(c, x)) for a, x in zip(acc, v)]
    return acc


def check_reducibility(U, samples=100, seed=0, dec=None, LU=None):
    """<v_0..v_{n-1}> meets <U> iff it meets some U_i, on sampled tuples v_i in V_i."""
    T = U.tower
    if T.n > T.q:
        return VerificationOutcome("reducibility", "hypothesis_unmet", details={"n": T.n, "q": T.q})
    LU = LU if LU is not None else linear_set(U)
    if not len(LU) or LU.min_weight() < 2:
        return VerificationOutcome("reducibility", "hypothesis_unmet", details={"min_weight": 1})
    dec = dec or decompose(U)
    S = dec.state
    r, n = S.r, S.n
    rng = np.random.default_rng(seed)
    hits = 0
    for k in range(samples):
        if k % 2:
            y = _random_in(dec.Un, rng)
            blocks = [y[i * r:(i + 1) * r] for i in range(n)]
            blocks = [b if any(b) else _random_nonzero_block(S, i, rng) for i, b in enumerate(blocks)]
        else:
            blocks = [_random_nonzero_block(S, i, rng) for i in range(n)]
        vecs = [tuple(blocks[i] if j == i else [0] * r for j in range(n)) for i in range(n)]
        vecs = [tuple(x for blk in v for x in blk) for v in vecs]
        W = span(T, S.rank, vecs, n)
        meets_un = intersect(W, dec.Un).dim > 0
        meets_ui = any(intersect(W, Ui).dim > 0 for Ui in dec.Ui)
        hits += meets_un
        if meets_un != meets_ui:
            return outcome("reducibility", False, U, sample=k, meets_un=meets_un, meets_ui=meets_ui)
    return outcome("reducibility", True, U, samples=samples, meeting=hits)
