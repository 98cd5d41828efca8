"""Exact arithmetic in the tower F_p <= F_q <= F_{q^d} <= F_{q^n}.

Elements are plain ints in polynomial encoding: the base-p digits (low
first) of an int are the coefficients of its residue modulo the tower
modulus.  0 is zero and 1 is one.  Multiplication and inversion go through
discrete-log tables; addition is XOR in characteristic 2 and a Zech
logarithm lookup otherwise.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import config
from .errors import DivisionByZero, FieldTooLarge, NotDivisor, NotPrime


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _polmulmod(a, b, f, p):
    D = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, D - 1, -1):
        c = prod[k]
        if c:
            for j in range(D + 1):
                prod[k - D + j] = (prod[k - D + j] - c * f[j]) % p
    return (prod + [0] * D)[:D]


def _polpowmod(base, e, f, p):
    D = len(f) - 1
    result = [1] + [0] * (D - 1)
    while e:
        if e & 1:
            result = _polmulmod(result, base, f, p)
        base = _polmulmod(base, base, f, p)
        e >>= 1
    return result


def _t_is_primitive(f, p):
    D = len(f) - 1
    order = p**D - 1
    one = [1] + [0] * (D - 1)
    t = [0, 1] + [0] * (D - 2)
    if _polpowmod(t, order, f, p) != one:
        return False
    return all(_polpowmod(t, order // ell, f, p) != one for ell in prime_factors(order))


def find_modulus(p, D):
    """Smallest monic degree-D polynomial over F_p whose root t is primitive.

    Candidates are ordered by the integer sum(c_i p^i) of their non-leading
    coefficients.  A primitive t forces irreducibility.  D == 1 returns t.
    """
    if D == 1:
        return (0, 1)
    for k in range(p**D):
        low = [(k // p**i) % p for i in range(D)]
        if low[0] == 0:
            continue
        f = low + [1]
        if _t_is_primitive(f, p):
            return tuple(f)
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


def _primitive_root(p):
    if p == 2:
        return 1
    facs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in facs):
            return g
    raise AssertionError  # pragma: no cover


@dataclass(frozen=True)
class TowerSpec:
    p: int
    h: int
    n: int
    modulus: tuple

    def serialize(self):
        return " ".join(str(x) for x in (self.p, self.h, self.n) + tuple(self.modulus))

    @classmethod
    def parse(cls, line):
        vals = [int(x) for x in line.split()]
        return cls(vals[0], vals[1], vals[2], tuple(vals[3:]))


class Tower:
    """The field F_{q^n}, q = p^h, with its intermediate subfields.

    Build through :func:`make_tower`, which caches instances; a tower is
    immutable after construction.
    """

    def __init__(self, p, h, n, table_limit=None):
        if not is_prime(p):
            raise NotPrime(p)
        if h < 1 or n < 1:
            raise ValueError("h and n must be positive")
        limit = table_limit or config.table_limit()
        D = h * n
        if p**D > limit:
            raise FieldTooLarge(f"F_{p}^{D} has {p**D} elements > {limit}")
        self.p, self.h, self.n = p, h, n
        self.q = p**h
        self.order = p**D
        self.degree = D
        self.modulus = find_modulus(p, D)
        self.spec = TowerSpec(p, h, n, self.modulus)
        self.divisors = divisors(n)
        self._pows = np.array([p**i for i in range(D)], dtype=np.int64)
        self._build_tables()
        self._coord_cache = {}
        self._subfield_cache = {}

    # -- construction -------------------------------------------------
    def _build_tables(self):
        p, D, Q = self.p, self.degree, self.order
        N = Q - 1
        if D == 1:
            g = _primitive_root(p)
            exp = np.empty(N, dtype=np.int64)
            x = 1
            for k in range(N):
                exp[k] = x
                x = x * g % p
            self.primitive = g
        else:
            f = self.modulus
            C = np.zeros((D, D), dtype=np.int64)  # multiplication by t, column form
            for i in range(D - 1):
                C[i + 1, i] = 1
            for i in range(D):
                C[i, D - 1] = (-f[i]) % p
            digs = np.zeros((1, D), dtype=np.int64)
            digs[0, 0] = 1
            step = C.copy()  # C^len(digs)
            while len(digs) < N:
                nxt = (digs @ step.T) % p
                digs = np.vstack([digs, nxt])
                step = (step @ step) % p
            exp = digs[:N] @ self._pows
            self.primitive = p
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(N)
        assert (log[1:] >= 0).all(), "generator is not primitive"
        self.exp_np = np.concatenate([exp, exp])
        self.log_np = log
        self.exp = self.exp_np.tolist()
        self.log = log.tolist()
        if p == 2:
            self.neg_table = list(range(Q))
            self.zech = None
        else:
            dig = self.digits_np(np.arange(Q))
            self.neg_table = self.from_digits_np((-dig) % p).tolist()
            # Zech: log(1 + g^k), -1 when 1 + g^k = 0
            one_plus = exp - exp % p + (exp % p + 1) % p
            self.zech = log[one_plus].tolist()

    # -- scalar arithmetic --------------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if a == 0:
            if k < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if k == 0 else 0
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def frobenius(self, x, i=1):
        """x^(q^i)."""
        if x == 0:
            return 0
        N = self.order - 1
        return self.exp[(self.log[x] * pow(self.q, i % self.n, N)) % N]

    def _check_divisor(self, d):
        if d < 1 or self.n % d:
            raise NotDivisor(f"{d} does not divide n={self.n}")

    def rel_trace(self, x, d=1):
        """Trace from F_{q^n} down to F_{q^d}."""
        self._check_divisor(d)
        acc = 0
        for i in range(self.n // d):
            acc = self.add(acc, self.frobenius(x, d * i))
        return acc

    def subfield_generator(self, d):
        """A primitive element of F_{q^d}; it also generates F_{q^d} over F_q."""
        self._check_divisor(d)
        N = self.order - 1
        return self.exp[N // (self.q**d - 1)]

    def subfield_elements(self, d):
        self._check_divisor(d)
        if d not in self._subfield_cache:
            N = self.order - 1
            step = N // (self.q**d - 1)
            self._subfield_cache[d] = tuple([0] + sorted(self.exp[k] for k in range(0, N, step)))
        return self._subfield_cache[d]

    def in_subfield(self, x, d):
        return x == 0 or self.log[x] % ((self.order - 1) // (self.q**d - 1)) == 0

    # -- coordinates over intermediate fields --------------------------
    def coord_table(self, d):
        """Array of shape (Q, n/d): coordinates of every element over F_{q^d}
        in the basis 1, b, ..., b^(n/d - 1), b the primitive element."""
        self._check_divisor(d)
        if d in self._coord_cache:
            return self._coord_cache[d]
        k = self.n // d
        Q = self.order
        if k == 1:
            table = np.arange(Q, dtype=np.int64).reshape(Q, 1)
        elif self.h == 1 and d == 1:
            table = self.digits_np(np.arange(Q, dtype=np.int64))
        else:
            S = np.array(self.subfield_elements(d), dtype=np.int64)
            s = len(S)
            acc = np.zeros((1, self.degree), dtype=np.int64)
            for j in range(k):
                bj = self.pow(self.primitive, j)
                prods = self.digits_np(self.mul_np(S, np.full(s, bj)))
                acc = ((acc[:, None, :] + prods[None, :, :]) % self.p).reshape(-1, self.degree)
            values = self.from_digits_np(acc)
            idx = np.empty(Q, dtype=np.int64)
            idx[values] = np.arange(Q)
            combos = np.stack(np.unravel_index(idx, (s,) * k), axis=1)
            table = S[combos]
        table.setflags(write=False)
        self._coord_cache[d] = table
        return table

    def coords(self, x, d=1):
        return tuple(int(c) for c in self.coord_table(d)[x])

    def uncoords(self, c, d=1):
        self._check_divisor(d)
        if len(c) != self.n // d:
            raise ValueError("wrong coordinate length")
        acc = 0
        b = 1
        for cj in c:
            acc = self.add(acc, self.mul(cj, b))
            b = self.mul(b, self.primitive)
        return acc

    # -- vectorized helpers --------------------------------------------
    def digits_np(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pows) % self.p

    def from_digits_np(self, dig):
        return np.asarray(dig, dtype=np.int64) @ self._pows

    def mul_np(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_np[a]
        lb = self.log_np[b]
        out = self.exp_np[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_np(self, a):
        a = np.asarray(a, dtype=np.int64)
        N = self.order - 1
        return self.exp_np[(-self.log_np[a]) % N]

    def add_np(self, a, b):
        da = self.digits_np(a)
        db = self.digits_np(b)
        return self.from_digits_np((da + db) % self.p)

    def __repr__(self):
        return f"Tower(p={self.p}, h={self.h}, n={self.n}, modulus={self.modulus})"

    def __reduce__(self):
        return (make_tower, (self.p, self.h, self.n))


@lru_cache(maxsize=None)
def make_tower(p, h, n):
    return Tower(p, h, n)


def tower_for(q, n):
    """Tower with q = p^h given as the integer q."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    h = 0
    m = q
    while m % p == 0:
        m //= p
        h += 1
    if m != 1 or not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return make_tower(p, h, n)


def arith(tower, x, y=None, kind="add"):
    if kind == "add":
        return tower.add(x, y)
    if kind == "mul":
        return tower.mul(x, y)
    if kind == "inv":
        return tower.inv(x)
    if kind == "pow":
        return tower.pow(x, y)
    raise ValueError(f"unknown operation {kind!r}")
