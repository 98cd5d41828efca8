"""Dense row-echelon kernel over any subfield F_{q^e} of a tower.

Every level of the package (F_q coordinates, F_{q^d} coordinates, F_{q^n}
vectors of the cyclic model) goes through :func:`rref`.
"""
from functools import lru_cache

from .errors import DivisionByZero


class FieldOps:
    """Arithmetic on the subfield F_{q^e}; elements are tower ints."""

    def __init__(self, tower, e):
        self.tower = tower
        self.e = e
        self.size = tower.q**e
        self.prime = tower.h == 1 and e == 1
        p = tower.p
        if self.prime:
            self.p = p
            if p == 2:
                self.add = int.__xor__
                self.sub = int.__xor__
                self.neg = lambda a: a
            else:
                self.add = lambda a, b: (a + b) % p
                self.sub = lambda a, b: (a - b) % p
                self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: a * b % p
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
        else:
            self.add = tower.add
            self.sub = tower.sub
            self.neg = tower.neg
            self.mul = tower.mul
            self._inv = None

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._inv is not None:
            return self._inv[a]
        return self.tower.inv(a)

    def axpy(self, f, x, y):
        """y + f*x, entrywise."""
        if self.prime:
            p = self.p
            if p == 2:
                return [b ^ a for a, b in zip(x, y)] if f else list(y)
            return [(b + f * a) % p for a, b in zip(x, y)]
        add, mul = self.add, self.mul
        return [add(b, mul(f, a)) if a else b for a, b in zip(x, y)]

    def scale(self, f, x):
        if self.prime:
            return [a * f % self.p for a in x]
        mul = self.mul
        return [mul(f, a) for a in x]


@lru_cache(maxsize=None)
def field_ops(tower, e):
    return FieldOps(tower, e)


def rref(rows, F, ncols=None):
    """Reduced row echelon form; returns (tuple of nonzero rows, pivots)."""
    M = [list(r) for r in rows]
    if not M:
        return (), ()
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    top = 0
    nrows = len(M)
    neg = F.neg
    for c in range(ncols):
        if top == nrows:
            break
        piv = None
        for i in range(top, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[top], M[piv] = M[piv], M[top]
        lead = M[top][c]
        if lead != 1:
            M[top] = F.scale(F.inv(lead), M[top])
        row = M[top]
        for i in range(nrows):
            if i != top:
                f = M[i][c]
                if f:
                    M[i] = F.axpy(neg(f), row, M[i])
        pivots.append(c)
        top += 1
    return tuple(tuple(r) for r in M[:top]), tuple(pivots)


def reduce(vec, basis, pivots, F):
    """Residue of vec against an RREF basis."""
    v = list(vec)
    neg = F.neg
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = F.axpy(neg(f), row, v)
    return v


def in_span(vec, basis, pivots, F):
    return not any(reduce(vec, basis, pivots, F))


def rank(rows, F):
    return len(rref(rows, F)[0])


def nullspace(rows, F, ncols):
    """Basis of {x : A x = 0} for A given by rows."""
    R, piv = rref(rows, F, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(R, piv):
            if row[fc]:
                x[pc] = F.neg(row[fc])
        out.append(tuple(x))
    return out


def intersect_rows(A, B, F, ncols):
    """Basis (not reduced) of span(A) ∩ span(B) by the Zassenhaus trick."""
    if not A or not B:
        return []
    z = [0] * ncols
    stacked = [list(a) + list(a) for a in A] + [list(b) + z for b in B]
    R, piv = rref(stacked, F, 2 * ncols)
    return [row[ncols:] for row, c in zip(R, piv) if c >= ncols]
