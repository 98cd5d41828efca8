"""Linear sets L_U, point weights, and the field-of-linearity checks."""
import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import AmbientMismatch, BudgetExceeded, EmptySubspace, HypothesisViolated, RankNotMultipleOfN
from .fq_linalg import (
    _check_same, field_ops, intersect, is_linear_over, is_subspace_of, linearity_degree,
    random_element, scalar_span_over, span, vector_coords,
)
from .linalg import rank as _rank
from .linalg import rref
from .verification import VerificationOutcome, outcome


# -- projective points ------------------------------------------------------

def normalize(tower, v):
    """Representative of <v> whose first nonzero entry is 1 (None for v = 0)."""
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            inv = tower.inv(x)
            return tuple(tower.mul(inv, y) for y in v)
    return None


def num_points(tower, r):
    Q = tower.order
    return (Q**r - 1) // (Q - 1)


def all_points(tower, r):
    Q = tower.order
    for lead in range(r):
        for tail in itertools.product(range(Q), repeat=r - lead - 1):
            yield (0,) * lead + (1,) + tail


# -- enumeration ------------------------------------------------------------

def _multiples_digits(T, S, v):
    prods = T.mul_np(S[:, None], np.asarray(v, dtype=np.int64)[None, :])
    return T.digits_np(prods).astype(np.int16)


def span_count(U, projective):
    s = U.tower.q**U.e
    k = U.dim
    return (s**k - 1) // (s - 1) if projective else s**k


def enumerate_vectors(U, projective=False, limit=None):
    """All vectors of U as an (N, r) int array.

    With ``projective=True`` only combinations whose first nonzero
    coefficient (over F_{q^e}) is 1 are produced, and the zero vector is
    skipped.
    """
    T = U.tower
    limit = limit or config.enum_limit()
    count = span_count(U, projective)
    if count > limit:
        raise BudgetExceeded(f"{count} vectors exceed the enumeration budget {limit}")
    r, D, p = U.r, T.degree, T.p
    vecs = U.vectors()
    if not vecs:
        return np.zeros((0 if projective else 1, r), dtype=np.int64)
    S = np.array(T.subfield_elements(U.e), dtype=np.int64)
    tables = [_multiples_digits(T, S, v) for v in vecs]
    if projective:
        chunks = []
        for j in range(len(vecs)):
            acc = tables[j][1:2]  # coefficient 1
            for tab in tables[j + 1:]:
                acc = ((acc[:, None] + tab[None]) % p).reshape(-1, r, D)
            chunks.append(acc)
        dig = np.concatenate(chunks)
    else:
        dig = np.zeros((1, r, D), dtype=np.int16)
        for tab in tables:
            dig = ((dig[:, None] + tab[None]) % p).reshape(-1, r, D)
    return dig.astype(np.int64) @ T._pows


def normalize_rows(T, vals):
    """Normalize each nonzero row so its first nonzero entry is 1."""
    vals = np.asarray(vals, dtype=np.int64)
    if len(vals) == 0:
        return vals
    N = T.order - 1
    nz = vals != 0
    first = nz.argmax(axis=1)
    lead = vals[np.arange(len(vals)), first]
    shift = (-T.log_np[lead]) % N
    lv = T.log_np[vals]
    return np.where(nz, T.exp_np[(lv + shift[:, None]) % N], 0)


def tally_points(T, vals):
    """Group nonzero rows by projective point; returns (points, counts)."""
    vals = np.asarray(vals, dtype=np.int64)
    vals = vals[(vals != 0).any(axis=1)]
    if len(vals) == 0:
        return [], []
    normed = normalize_rows(T, vals)
    r = normed.shape[1]
    Q = T.order
    if Q**r < 2**62:
        powers = np.array([Q**(r - 1 - i) for i in range(r)], dtype=np.int64)
        keys, counts = np.unique(normed @ powers, return_counts=True)
        pts = np.stack([(keys // Q**(r - 1 - i)) % Q for i in range(r)], axis=1)
    else:
        pts, counts = np.unique(normed, axis=0, return_counts=True)
    return [tuple(row) for row in pts.tolist()], counts.tolist()


def _weight_from_count(q, e, c):
    total = c * (q**e - 1) + 1
    w = 0
    while q**w < total:
        w += 1
    if q**w != total:
        raise AssertionError(f"multiplicity {c} is not of the form (q^w-1)/(q^e-1)")
    return w


# -- linear sets ------------------------------------------------------------

@dataclass(frozen=True)
class LinearSet:
    weights: dict
    rank: int
    r: int
    tower: object
    whole_space: bool = False
    flags: tuple = field(default=())

    @property
    def points(self):
        return frozenset(self.weights)

    def __len__(self):
        return len(self.weights)

    size = property(__len__)

    def __contains__(self, P):
        return P in self.weights

    def __iter__(self):
        return iter(self.weights)

    def spectrum(self):
        return Counter(self.weights.values())

    def min_weight(self):
        if not self.weights:
            raise EmptySubspace("empty linear set")
        return min(self.weights.values())

    def mass(self):
        q = self.tower.p**self.tower.h
        return sum(q**w - 1 for w in self.weights.values())


def linear_set(U, limit=None):
    """L_U with weights obtained from point multiplicities."""
    T = U.tower
    whole = U.fq_dim > (U.r - 1) * T.n
    vals = enumerate_vectors(U, projective=True, limit=limit)
    pts, counts = tally_points(T, vals)
    weights = {P: _weight_from_count(T.q, U.e, c) for P, c in zip(pts, counts)}
    flags = ("whole_space",) if whole else ()
    return LinearSet(weights, U.fq_dim, U.r, T.spec, whole, flags)


def point_line(tower, r, P):
    """The F_{q^n}-span of the vector P."""
    return span(tower, r, [P], tower.n)


def weight(U, P):
    """dim over F_q of <P>_{F_{q^n}} ∩ U, by intersection."""
    T = U.tower
    if len(P) != U.r:
        raise AmbientMismatch("point and subspace live in different ambients")
    line = scalar_span_over(span(T, U.r, [P], 1), T.n)
    return intersect(line, U).fq_dim


def meet_dim(W, gens):
    """dim_q(W ∩ R) with R the F_{q^n}-span of ``gens``, from ranks over W's field."""
    T = W.tower
    e = W.e
    F = field_ops(T, e)
    beta = [T.pow(T.primitive, j) for j in range(T.n // e)]
    rows = [vector_coords(T, tuple(T.mul(b, x) for x in g), e) for g in gens for b in beta]
    R = _rank(rows, F) if rows else 0
    rk = _rank(list(W.basis) + rows, F) if rows else W.dim
    return e * (W.dim + R - rk)


def weight_by_rank(W, P):
    """Same as :func:`weight`, computed from ranks over W's own field."""
    return meet_dim(W, [P])


def weight_spectrum(U):
    if U.dim == 0:
        raise EmptySubspace("zero subspace")
    return linear_set(U).spectrum()


def min_weight(U):
    if U.dim == 0:
        raise EmptySubspace("zero subspace")
    return linear_set(U).min_weight()


def size(U):
    return len(linear_set(U))


def same_linear_set(U, W):
    """Point-set equality of L_U and L_W (weights ignored)."""
    _check_same(U, W)
    if is_subspace_of(U, W):
        return contains_same_points(U, W)
    if is_subspace_of(W, U):
        return contains_same_points(W, U)
    return linear_set(U).points == linear_set(W).points


def contains_same_points(U, W, LU=None, probes=32, seed=0):
    """L_U == L_W for U ⊆ W, without enumerating W when it is large."""
    T = U.tower
    if U.fq_dim == W.fq_dim:
        return True
    LU = LU if LU is not None else linear_set(U)
    if W.fq_dim > (W.r - 1) * T.n:
        return len(LU) == num_points(T, W.r)
    rng = np.random.default_rng(seed)
    for _ in range(probes):
        w = normalize(T, random_element(W, rng))
        if w is not None and w not in LU.weights:
            return False
    if span_count(W, True) <= config.enum_limit():
        pts, _ = tally_points(T, enumerate_vectors(W, projective=True))
        return len(pts) == len(LU)
    q = T.q
    mass = sum(q**weight_by_rank(W, P) - 1 for P in LU.weights)
    return mass == q**W.fq_dim - 1


@dataclass(frozen=True)
class Linearity:
    degree: int
    unproven_maximal: bool
    tried: tuple

    def __int__(self):
        return self.degree


def field_of_linearity_by_closure(U, LU=None):
    """Largest d | n with L_U = L_{<U>_{F_{q^d}}}.

    ``unproven_maximal`` is set when n > q: the closure test is then not
    known to find the definitional maximum.
    """
    T = U.tower
    if U.dim == 0:
        raise EmptySubspace("zero subspace")
    LU = LU if LU is not None else linear_set(U)
    tried = []
    for d in sorted(T.divisors, reverse=True):
        ok = d == 1 or contains_same_points(U, scalar_span_over(U, d), LU)
        tried.append((d, ok))
        if ok:
            return Linearity(d, T.n > T.q, tuple(tried))
    raise AssertionError("d = 1 always succeeds")  # pragma: no cover


# -- theorem checks ---------------------------------------------------------

def check_thm_main1(U, LU=None):
    """Rank an with all weights >= w >= 2 forces w | n and F_{q^w}-linearity."""
    T = U.tower
    m = U.fq_dim
    if m == 0 or m % T.n:
        raise RankNotMultipleOfN(f"rank {m} is not a positive multiple of n={T.n}")
    LU = LU if LU is not None else linear_set(U)
    w = LU.min_weight()
    if w < 2:
        return VerificationOutcome("thm_main1", "vacuous", details={"w": w})
    divides = T.n % w == 0
    linear = divides and is_linear_over(U, w)
    maximal = linear and linearity_degree(U) == w
    return outcome("thm_main1", divides and linear and maximal, U,
                   w=w, divides=divides, linear=linear, maximal=maximal)


def check_thm_main(U, LU=None):
    """n <= q and all weights >= w >= 2 give d, w <= d | n, with L_U = L_<U>_{q^d}."""
    T = U.tower
    m = U.fq_dim
    if T.n > T.q or m > (U.r - 1) * T.n:
        return VerificationOutcome("thm_main", "hypothesis_unmet",
                                   details={"n": T.n, "q": T.q, "m": m})
    if m == 0:
        return VerificationOutcome("thm_main", "vacuous", details={"m": 0})
    LU = LU if LU is not None else linear_set(U)
    w = LU.min_weight()
    if w < 2:
        return VerificationOutcome("thm_main", "vacuous", details={"w": w})
    found = None
    for d in sorted(T.divisors, reverse=True):
        if d < w:
            break
        if contains_same_points(U, scalar_span_over(U, d), LU):
            found = d
            break
    return outcome("thm_main", found is not None, U, w=w, d=found)


def _project_from(tower, P, v):
    """Image of v in the quotient by <P>, as a normalized (r-1)-vector."""
    i0 = next(i for i, x in enumerate(P) if x)
    c = v[i0]
    w = [tower.sub(x, tower.mul(c, y)) for x, y in zip(v, P)]
    del w[i0]
    return normalize(tower, w)


def _tangent_data(U, P, LU):
    T = U.tower
    images = set()
    for R in LU.weights:
        if R != P:
            images.add(_project_from(T, P, R))
    total = num_points(T, U.r - 1)
    return total, images


def tangent_count(U, P, LU=None):
    """Number of lines through P ∈ L_U meeting L_U only in P."""
    T = U.tower
    if U.r <= 2 or U.fq_dim > T.n * (U.r - 2):
        raise HypothesisViolated("needs r > 2 and rank <= n(r-2)")
    LU = LU if LU is not None else linear_set(U)
    if P not in LU.weights:
        raise HypothesisViolated("P is not a point of L_U")
    total, images = _tangent_data(U, P, LU)
    return total - len(images)


def check_tangenti(U, P, LU=None):
    """At least r-1 tangents through P, spanning the whole space."""
    T = U.tower
    LU = LU if LU is not None else linear_set(U)
    count = tangent_count(U, P, LU)
    _, images = _tangent_data(U, P, LU)
    F = field_ops(T, T.n)
    rows = ()
    piv = ()
    for D in all_points(T, U.r - 1):
        if D in images:
            continue
        rows, piv = rref(list(rows) + [D], F, U.r - 1)
        if len(rows) == U.r - 1:
            break
    spans = len(rows) == U.r - 1
    return outcome("tangenti", count >= U.r - 1 and spans, U, point=list(P),
                   tangents=count, spanning=spans)
