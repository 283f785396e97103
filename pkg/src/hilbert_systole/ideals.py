"""Nonzero ideals of Z[theta] in Hermite normal form.

An ideal is stored by a canonical Z-basis: an n x n lower-triangular
integer matrix whose row i is an element of the ideal with pivot
``h_ii > 0`` in coordinate i (the coefficient of theta^i) and zeros to the
right of it, every entry left of a pivot being reduced into
``[0, h_jj)``.  With the columns read from theta^(n-1) down to 1 this is
the usual upper-triangular HNF.  Row 0 is ``(r, 0, ..., 0)`` where r is
the least positive rational integer in the ideal.

Fractional ideals never appear.  A condition such as ``y in J / 8`` for a
doubled quantity ``2y`` is tested as ``4 * (2y) in J``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, Sequence

from . import gfpoly
from .errors import FieldMismatch, NormTooLargeToFactor, NotPrime, ZeroElement
from .number_field import AlgebraicInteger, NumberField, _check_same

MAX_FACTOR_NORM = 10 ** 12


def hnf_rows(vectors: Iterable[Sequence[int]], n: int) -> tuple:
    """Canonical lower-triangular HNF of the lattice spanned by ``vectors``.

    Raises ValueError if the vectors do not span a rank-n lattice.
    """
    pool = [list(v) for v in vectors if any(v)]
    pivots = [None] * n
    for col in range(n - 1, -1, -1):
        active = [v for v in pool if v[col]]
        rest = [v for v in pool if not v[col]]
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[col]))
            piv = active[0]
            nxt = [piv]
            for v in active[1:]:
                q = v[col] // piv[col]
                w = [a - q * b for a, b in zip(v, piv)]
                if w[col]:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            active = nxt
        if not active:
            raise ValueError("generators do not span a full-rank lattice")
        row = active[0]
        if row[col] < 0:
            row = [-a for a in row]
        pivots[col] = row
        pool = rest
    for i in range(n):
        row = pivots[i]
        for j in range(i - 1, -1, -1):
            q = row[j] // pivots[j][j]
            if q:
                row = [a - q * b for a, b in zip(row, pivots[j])]
        pivots[i] = row
    return tuple(tuple(r) for r in pivots)


def reduce_vector(basis: tuple, coords: Sequence[int]) -> tuple:
    """Canonical representative of ``coords`` modulo the lattice ``basis``."""
    v = list(coords)
    for i in range(len(basis) - 1, -1, -1):
        q = v[i] // basis[i][i]
        if q:
            row = basis[i]
            for j in range(i + 1):
                v[j] -= q * row[j]
    return tuple(v)


@dataclass(frozen=True, eq=False)
class IdealHNF:
    field: NumberField
    basis: tuple
    norm: int
    factorization: tuple | None = None

    def __eq__(self, other):
        return isinstance(other, IdealHNF) and self.basis == other.basis and self.field == other.field

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return "IdealHNF(%s, N=%d, basis=%s)" % (self.field.label, self.norm, [list(r) for r in self.basis])

    def __contains__(self, a):
        return contains(self, a)

    def __mul__(self, other):
        return mul_ideals(self, other)

    def __pow__(self, t):
        return pow_ideal(self, t)

    @property
    def is_whole_ring(self) -> bool:
        return self.norm == 1

    def elements(self):
        """The HNF rows as algebraic integers."""
        return [AlgebraicInteger(self.field, r) for r in self.basis]

    def reduce(self, a: AlgebraicInteger) -> tuple:
        _check_same(self.field, a.field)
        return reduce_vector(self.basis, a.coords)


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: IdealHNF
    p: int
    f: int
    e: int
    generator: tuple   # lift of the irreducible factor mod p, ascending coefficients

    @property
    def norm(self) -> int:
        return self.ideal.norm


def _make(K: NumberField, vectors, factorization=None) -> IdealHNF:
    basis = hnf_rows(vectors, K.degree)
    nrm = math.prod(basis[i][i] for i in range(K.degree))
    return IdealHNF(K, basis, nrm, factorization)


def _shifts(a: AlgebraicInteger):
    theta = a.field.theta
    cur = a
    out = []
    for _ in range(a.field.degree):
        out.append(cur.coords)
        cur = cur * theta
    return out


def ideal_from_generators(K: NumberField, gens: Sequence[AlgebraicInteger]) -> IdealHNF:
    vecs = []
    for g in gens:
        _check_same(K, g.field)
        vecs.extend(_shifts(g))
    if not any(any(v) for v in vecs):
        raise ZeroElement("the zero ideal is not supported")
    return _make(K, vecs)


def principal_ideal(a: AlgebraicInteger) -> IdealHNF:
    if a.is_zero():
        raise ZeroElement("principal ideal of 0")
    return ideal_from_generators(a.field, [a])


def integer_ideal(K: NumberField, m: int) -> IdealHNF:
    if m < 1:
        raise ZeroElement("integer ideal needs m >= 1, got %d" % m)
    n = K.degree
    return _make(K, [[m * (i == j) for j in range(n)] for i in range(n)])


def whole_ring(K: NumberField) -> IdealHNF:
    return integer_ideal(K, 1)


def mul_ideals(I: IdealHNF, J: IdealHNF) -> IdealHNF:
    if I.field != J.field:
        raise FieldMismatch("ideals live in different fields")
    K = I.field
    vecs = [(x * y).coords for x in I.elements() for y in J.elements()]
    m = I.basis[0][0] * J.basis[0][0]
    vecs.extend([m * (i == j) for j in range(K.degree)] for i in range(K.degree))
    return _make(K, vecs)


def pow_ideal(I: IdealHNF, t: int) -> IdealHNF:
    if t < 1:
        raise ValueError("exponent must be >= 1")
    result, base = None, I
    while t:
        if t & 1:
            result = base if result is None else mul_ideals(result, base)
        t >>= 1
        if t:
            base = mul_ideals(base, base)
    return result


def contains(I: IdealHNF, a) -> bool:
    if isinstance(a, int):
        a = I.field(a)
    return not any(I.reduce(a))


def is_subset(I: IdealHNF, J: IdealHNF) -> bool:
    """True iff I is contained in J."""
    return all(contains(J, x) for x in I.elements())


def min_rational_integer(I: IdealHNF) -> int:
    return I.basis[0][0]


def theta_closed(I: IdealHNF) -> bool:
    theta = I.field.theta
    return all(contains(I, x * theta) for x in I.elements())


# -- prime decomposition -----------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factor_integer(m: int) -> list:
    """Trial division; returns [(p, k)] with p increasing."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def factor_rational_prime(K: NumberField, p: int) -> list:
    """Prime ideals above p as ``[(PrimeIdeal, e)]`` in deterministic order.

    Uses the factorization of the minimal polynomial mod p; each irreducible
    factor g of degree f and multiplicity e gives the prime (p, g(theta))
    of norm p**f.  Exact because the order is Z[theta].
    """
    if not is_prime(p):
        raise NotPrime("%d is not prime" % p)
    out = []
    p_elem = K(p)
    for g, e in gfpoly.factor(list(K.min_poly), p):
        g_elem = K.zero
        power = K.one
        for c in g:
            g_elem = g_elem + c * power
            power = power * K.theta
        ideal = ideal_from_generators(K, [p_elem, g_elem])
        f = len(g) - 1
        assert ideal.norm == p ** f
        out.append((PrimeIdeal(ideal, p, f, e, tuple(g)), e))
    return out


def factor_ideal(I: IdealHNF) -> list:
    """``[(PrimeIdeal, exponent)]`` with ``prod P**k == I``."""
    if I.factorization is not None:
        return list(I.factorization)
    if I.norm == 1:
        return []
    if I.norm > MAX_FACTOR_NORM:
        raise NormTooLargeToFactor("N(I) = %d exceeds %d" % (I.norm, MAX_FACTOR_NORM))
    out = []
    for p, k_total in factor_integer(I.norm):
        for P, _ in factor_rational_prime(I.field, p):
            k = 0
            power = None
            while (k + 1) * P.f <= k_total:
                nxt = P.ideal if power is None else mul_ideals(power, P.ideal)
                if not is_subset(I, nxt):
                    break
                power, k = nxt, k + 1
            if k:
                out.append((P, k))
    check = _fold(mul_ideals, [pow_ideal(P.ideal, k) for P, k in out])
    if check != I:
        raise AssertionError("prime factors of %r do not multiply back" % (I,))
    return out


def with_factorization(I: IdealHNF) -> IdealHNF:
    """Same ideal with its factorization cached on the value."""
    if I.factorization is not None:
        return I
    return IdealHNF(I.field, I.basis, I.norm, tuple(factor_ideal(I)))


def ideal_from_factors(factors) -> IdealHNF:
    """Multiply ``[(PrimeIdeal, k)]`` out, keeping the factorization."""
    factors = [(P, k) for P, k in factors if k]
    if not factors:
        raise ValueError("need at least one factor")
    I = _fold(mul_ideals, [pow_ideal(P.ideal, k) for P, k in factors])
    merged = {}
    for P, k in factors:
        merged[P] = merged.get(P, 0) + k
    return IdealHNF(I.field, I.basis, I.norm, tuple(merged.items()))
