"""Subspaces of V = F_{q^n}^r over an intermediate field F_{q^e}.

A subspace over F_{q^e} keeps a reduced row echelon basis in flattened
coordinates of length r*(n/e): entry i of a vector contributes the n/e
coordinates of v_i over F_{q^e} in the power basis of the primitive element.
Everything that mixes fields is done through F_q coordinates.
"""
import itertools
from math import gcd

import numpy as np

from . import config
from .errors import AmbientMismatch, BudgetExceeded, NotDivisor, WrongAmbientRank
from .linalg import field_ops, in_span, intersect_rows, rref


def vector_coords(tower, v, e):
    table = coord_list(tower, e)
    out = []
    for x in v:
        out.extend(table[x])
    return out


def coords_vector(tower, c, e):
    k = tower.n // e
    return tuple(tower.uncoords(c[i:i + k], e) for i in range(0, len(c), k))


_COORD_LISTS = {}


def coord_list(tower, e):
    key = (tower.spec, e)
    if key not in _COORD_LISTS:
        _COORD_LISTS[key] = [tuple(row) for row in tower.coord_table(e).tolist()]
    return _COORD_LISTS[key]


class Subspace:
    """An F_{q^e}-subspace of F_{q^n}^r in canonical echelon form.

    Equality and hashing are set-theoretic: two subspaces with different
    base-field labels but the same vectors compare equal.
    """

    __slots__ = ("tower", "r", "e", "basis", "pivots", "_fq", "_vectors")

    def __init__(self, tower, r, e, basis, pivots=None):
        if tower.n % e:
            raise NotDivisor(f"{e} does not divide n={tower.n}")
        self.tower = tower
        self.r = r
        self.e = e
        self.basis = tuple(tuple(b) for b in basis)
        if pivots is None:
            pivots = tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)
        self.pivots = tuple(pivots)
        self._fq = None
        self._vectors = None

    @property
    def ncoords(self):
        return self.r * (self.tower.n // self.e)

    @property
    def dim(self):
        """Dimension over the subspace's own field F_{q^e}."""
        return len(self.basis)

    @property
    def fq_dim(self):
        return self.e * len(self.basis)

    rank = fq_dim

    @property
    def ambient(self):
        return (self.tower.spec, self.r)

    @property
    def field(self):
        return field_ops(self.tower, self.e)

    def vectors(self):
        """Basis over F_{q^e} as vectors of V."""
        if self._vectors is None:
            self._vectors = tuple(coords_vector(self.tower, b, self.e) for b in self.basis)
        return self._vectors

    def fq_vectors(self):
        """An F_q-basis of U as vectors of V."""
        if self.e == 1:
            return self.vectors()
        T = self.tower
        g = T.subfield_generator(self.e)
        scal = [T.pow(g, j) for j in range(self.e)]
        return tuple(tuple(T.mul(s, x) for x in v) for v in self.vectors() for s in scal)

    def fq_basis(self):
        """Canonical RREF over F_q in coordinates of length r*n."""
        if self._fq is None:
            if self.e == 1:
                self._fq = (self.basis, self.pivots)
            else:
                rows = [vector_coords(self.tower, v, 1) for v in self.fq_vectors()]
                self._fq = rref(rows, field_ops(self.tower, 1), self.r * self.tower.n)
        return self._fq

    def as_fq(self):
        if self.e == 1:
            return self
        b, piv = self.fq_basis()
        return Subspace(self.tower, self.r, 1, b, piv)

    def over(self, e):
        """Relabel over F_{q^e}; the caller guarantees closure."""
        if e == self.e:
            return self
        rows = [vector_coords(self.tower, v, e) for v in self.fq_vectors()]
        b, piv = rref(rows, field_ops(self.tower, e), self.r * (self.tower.n // e))
        return Subspace(self.tower, self.r, e, b, piv)

    def contains(self, v):
        if len(v) != self.r:
            raise AmbientMismatch("vector length differs from ambient rank")
        c = vector_coords(self.tower, v, self.e)
        return in_span(c, self.basis, self.pivots, self.field)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.tower.spec != other.tower.spec or self.r != other.r:
            return False
        if self.e == other.e:
            return self.basis == other.basis
        return self.fq_basis()[0] == other.fq_basis()[0]

    def __hash__(self):
        return hash((self.tower.spec, self.r, self.fq_basis()[0]))

    def __repr__(self):
        T = self.tower
        return (f"Subspace(q={T.q}, n={T.n}, r={self.r}, e={self.e}, "
                f"fq_dim={self.fq_dim})")

    def __reduce__(self):
        return (Subspace, (self.tower, self.r, self.e, self.basis, self.pivots))


def _check_same(U, W):
    if U.tower.spec != W.tower.spec or U.r != W.r:
        raise AmbientMismatch("subspaces live in different ambients")


def span(tower, r, vectors, e=1):
    """Smallest F_{q^e}-subspace containing the given vectors of F_{q^n}^r."""
    if tower.n % e:
        raise NotDivisor(f"{e} does not divide n={tower.n}")
    rows = []
    for v in vectors:
        if len(v) != r:
            raise AmbientMismatch("vector length differs from ambient rank")
        rows.append(vector_coords(tower, v, e))
    b, piv = rref(rows, field_ops(tower, e), r * (tower.n // e))
    return Subspace(tower, r, e, b, piv)


def zero_subspace(tower, r, e=1):
    return Subspace(tower, r, e, ())


def full_space(tower, r):
    n = tower.n
    return span(tower, r, [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)], n)


def member(U, v):
    return U.contains(v)


def is_subspace_of(U, W):
    _check_same(U, W)
    vecs = U.vectors() if W.e % U.e == 0 else U.fq_vectors()
    return all(W.contains(v) for v in vecs)


def _promote(U, floor):
    """Relabel U over the largest F_{q^d} (floor | d) under which it is closed."""
    for d in sorted(U.tower.divisors, reverse=True):
        if d <= floor or d % floor:
            continue
        if is_linear_over(U, d):
            return U.over(d)
    return U


def intersect(U, W):
    _check_same(U, W)
    g = gcd(U.e, W.e)
    A, B = U.over(g), W.over(g)
    F = field_ops(U.tower, g)
    rows = intersect_rows(A.basis, B.basis, F, A.ncoords)
    b, piv = rref(rows, F, A.ncoords)
    return _promote(Subspace(U.tower, U.r, g, b, piv), g)


def subspace_sum(U, W):
    _check_same(U, W)
    g = gcd(U.e, W.e)
    A, B = U.over(g), W.over(g)
    b, piv = rref(list(A.basis) + list(B.basis), field_ops(U.tower, g), A.ncoords)
    return _promote(Subspace(U.tower, U.r, g, b, piv), g)


def scalar_span_over(U, d):
    """Smallest F_{q^d}-subspace containing U."""
    T = U.tower
    if T.n % d:
        raise NotDivisor(f"{d} does not divide n={T.n}")
    if d == U.e:
        return U
    vecs = U.vectors() if d % U.e == 0 else U.fq_vectors()
    return span(T, U.r, vecs, d)


def is_linear_over(U, d):
    T = U.tower
    if T.n % d:
        raise NotDivisor(f"{d} does not divide n={T.n}")
    if U.e % d == 0:
        return True
    g = T.subfield_generator(d)
    return all(U.contains(tuple(T.mul(g, x) for x in v)) for v in U.vectors())


def linearity_degree(U):
    """Largest d | n such that U is F_{q^d}-linear."""
    for d in sorted(U.tower.divisors, reverse=True):
        if is_linear_over(U, d):
            return d
    return 1


def graph_subspace(tower, f_coeffs, r=2):
    """U_f = {(x, sum a_i x^(q^i)) : x in F_{q^n}} as an F_q-subspace."""
    if r != 2:
        raise WrongAmbientRank("graph subspaces live in rank-2 ambients")
    if len(f_coeffs) != tower.n:
        raise ValueError("need exactly n coefficients")
    basis = [tower.pow(tower.primitive, j) for j in range(tower.n)]
    return span(tower, 2, [(x, evaluate_qpoly(tower, f_coeffs, x)) for x in basis], 1)


def evaluate_qpoly(tower, coeffs, x):
    acc = 0
    for i, a in enumerate(coeffs):
        if a:
            acc = tower.add(acc, tower.mul(a, tower.frobenius(x, i)))
    return acc


def gaussian_binomial(a, b, q):
    if b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q**(a - i) - 1
        den *= q**(i + 1) - 1
    return num // den


def all_subspaces(tower, r, m, limit=None, e=1):
    """Every m-dimensional F_{q^e}-subspace of V, each exactly once, by pivot pattern."""
    N = r * (tower.n // e)
    total = gaussian_binomial(N, m, tower.q**e)
    limit = limit or config.subspace_limit()
    if total > limit:
        raise BudgetExceeded(f"{total} subspaces exceed the budget {limit}")
    vals = tower.subfield_elements(e)
    for piv in itertools.combinations(range(N), m):
        pset = set(piv)
        free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, N) if c not in pset]
        for fill in itertools.product(vals, repeat=len(free)):
            rows = [[0] * N for _ in range(m)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, c), x in zip(free, fill):
                rows[i][c] = x
            yield Subspace(tower, r, e, rows, piv)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_subspace(tower, r, m, seed=None):
    """Uniform m-dimensional F_q-subspace: draw vectors, redraw on dependence."""
    N = r * tower.n
    if m > N:
        raise ValueError("m exceeds the F_q-dimension of the ambient")
    rng = _rng(seed)
    vals = tower.subfield_elements(1)
    F = field_ops(tower, 1)
    rows, piv = (), ()
    while len(rows) < m:
        v = [vals[i] for i in rng.integers(0, len(vals), N)]
        if in_span(v, rows, piv, F):
            continue
        rows, piv = rref(list(rows) + [v], F, N)
    return Subspace(tower, r, 1, rows, piv)


def random_element(U, rng):
    """Uniform random vector of U."""
    T = U.tower
    vals = T.subfield_elements(U.e)
    acc = [0] * U.r
    for v in U.vectors():
        c = vals[int(rng.integers(0, len(vals)))]
        if c:
            acc = [T.add(a, T.mul(c, x)) for a, x in zip(acc, v)]
    return tuple(acc)


def random_fqd_subspace(tower, r, d, k, seed=None):
    """Uniform k-dimensional F_{q^d}-subspace."""
    rng = _rng(seed)
    vals = tower.subfield_elements(d)
    N = r * (tower.n // d)
    F = field_ops(tower, d)
    rows, piv = (), ()
    while len(rows) < k:
        v = [vals[i] for i in rng.integers(0, len(vals), N)]
        if in_span(v, rows, piv, F):
            continue
        rows, piv = rref(list(rows) + [v], F, N)
    return Subspace(tower, r, d, rows, piv)
