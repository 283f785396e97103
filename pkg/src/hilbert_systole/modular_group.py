"""SL2 over Z[theta], principal congruence subgroups and their index.

Half-integral quantities from the trace decomposition of a matrix
(``x0 = (a+d)/2`` and friends) are always stored doubled, so that every
value stays an algebraic integer.  Each inequality that is naturally
stated for the halved quantities is tested with denominators cleared; the
cleared form is written next to each check.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded, NotInGamma, NotSL2, ZeroY0
from .ideals import (
    IdealHNF,
    contains,
    factor_ideal,
    min_rational_integer,
    pow_ideal,
    reduce_vector,
)
from .number_field import AlgebraicInteger, NumberField, embed, embed_error_bound, norm

BRUTE_FORCE_CAP = 10 ** 5


@dataclass(frozen=True)
class MatrixSL2:
    a: AlgebraicInteger
    b: AlgebraicInteger
    c: AlgebraicInteger
    d: AlgebraicInteger

    def __post_init__(self):
        if (self.a * self.d - self.b * self.c) != 1:
            raise NotSL2("determinant is not 1")

    @property
    def field(self) -> NumberField:
        return self.a.field

    def __mul__(self, other: "MatrixSL2") -> "MatrixSL2":
        return MatrixSL2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MatrixSL2":
        return MatrixSL2(self.d, -self.b, -self.c, self.a)

    def trace(self) -> AlgebraicInteger:
        return self.a + self.d

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def key(self) -> tuple:
        """Flat coordinate tuple, used for deterministic tie-breaking."""
        return tuple(itertools.chain.from_iterable(x.coords for x in self.entries()))

    def embedded(self) -> list:
        """Real matrices sigma_i(A), one ((a, b), (c, d)) pair per embedding."""
        cols = [embed(x) for x in self.entries()]
        return [((a, b), (c, d)) for a, b, c, d in zip(*cols)]

    def to_json(self):
        return [[list(self.a.coords), list(self.b.coords)], [list(self.c.coords), list(self.d.coords)]]

    @classmethod
    def from_ints(cls, K: NumberField, rows):
        (a, b), (c, d) = rows
        return cls(K(a), K(b), K(c), K(d))


def identity(K: NumberField) -> MatrixSL2:
    return MatrixSL2(K.one, K.zero, K.zero, K.one)


def elementary_upper(beta: AlgebraicInteger) -> MatrixSL2:
    K = beta.field
    return MatrixSL2(K.one, beta, K.zero, K.one)


def elementary_lower(beta: AlgebraicInteger) -> MatrixSL2:
    K = beta.field
    return MatrixSL2(K.one, K.zero, beta, K.one)


def in_gamma(A: MatrixSL2, I: IdealHNF) -> bool:
    return (contains(I, A.a - 1) and contains(I, A.d - 1)
            and contains(I, A.b) and contains(I, A.c))


# -- trace decomposition and the two lemmas ----------------------------------

@dataclass(frozen=True)
class TraceDecomposition:
    dx0: AlgebraicInteger   # a + d
    dx1: AlgebraicInteger   # a - d
    dx2: AlgebraicInteger   # b + c
    dx3: AlgebraicInteger   # b - c
    dy0: AlgebraicInteger   # a + d - 2

    def quadric(self) -> AlgebraicInteger:
        """(2x0)^2 - (2x1)^2 - (2x2)^2 + (2x3)^2, which must equal 4."""
        return self.dx0 * self.dx0 - self.dx1 * self.dx1 - self.dx2 * self.dx2 + self.dx3 * self.dx3


def trace_decomposition(A: MatrixSL2) -> TraceDecomposition:
    dx0 = A.a + A.d
    return TraceDecomposition(dx0, A.a - A.d, A.b + A.c, A.b - A.c, dx0 - 2)


@dataclass(frozen=True)
class Lemma1Result:
    membership_ok: bool
    norm_ok: bool | None        # None when y0 == 0
    norm_y0_times_2n: int       # |N(2 y0)| = 2^n |N(y0)|


def lemma1_check(A: MatrixSL2, I: IdealHNF, I_squared: IdealHNF | None = None) -> Lemma1Result:
    """Test ``y0 in I^2/8`` and ``|N(y0)| >= N(I)^2 / 8^n`` exactly.

    Cleared forms: ``4 * (2 y0) in I^2`` and
    ``8^n * |N(2 y0)| >= 2^n * N(I)^2``.
    """
    if not in_gamma(A, I):
        raise NotInGamma("matrix is not in Gamma(I)")
    if I_squared is None:
        I_squared = pow_ideal(I, 2)
    td = trace_decomposition(A)
    membership = contains(I_squared, 4 * td.dy0)
    n = A.field.degree
    if td.dy0.is_zero():
        return Lemma1Result(membership, None, 0)
    ny = abs(norm(td.dy0))
    return Lemma1Result(membership, 8 ** n * ny >= 2 ** n * I.norm ** 2, ny)


def lemma2_bound(I: IdealHNF) -> float:
    """N(I)^(2/n) / 4 - 2, the trace bound some embedding must reach."""
    n = I.field.degree
    return I.norm ** (2.0 / n) / 4.0 - 2.0


def lemma2_check(A: MatrixSL2, I: IdealHNF) -> bool:
    if not in_gamma(A, I):
        raise NotInGamma("matrix is not in Gamma(I)")
    tr = A.trace()
    if tr == 2:
        raise ZeroY0("y0 = 0, the bound does not apply")
    values = embed(tr)
    slack = embed_error_bound(tr)
    return max(abs(v) for v in values) + slack >= lemma2_bound(I)


# -- reduction modulo I ------------------------------------------------------

@dataclass(frozen=True)
class ResidueMatrix:
    ideal: IdealHNF
    entries: tuple   # four canonical coordinate tuples a, b, c, d

    def __mul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        K = self.ideal.field
        a, b, c, d = (K.element(x) for x in self.entries)
        e, f, g, h = (K.element(x) for x in other.entries)
        prods = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return ResidueMatrix(self.ideal, tuple(reduce_vector(self.ideal.basis, x.coords) for x in prods))

    def is_identity(self) -> bool:
        one = reduce_vector(self.ideal.basis, self.ideal.field.one.coords)
        zero = reduce_vector(self.ideal.basis, self.ideal.field.zero.coords)
        return self.entries == (one, zero, zero, one)


def reduce_mod(A: MatrixSL2, I: IdealHNF) -> ResidueMatrix:
    return ResidueMatrix(I, tuple(reduce_vector(I.basis, x.coords) for x in A.entries()))


# -- orders and the index ----------------------------------------------------

def order_sl2_prime_power(P, t: int) -> int:
    """|SL2(O / P^t)| = q^(3t) - q^(3t-2) with q = N(P).

    ``P`` is a PrimeIdeal or directly the residue field size q.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    q = P if isinstance(P, int) else P.norm
    return q ** (3 * t) - q ** (3 * t - 2)


def order_sl2_quotient(I: IdealHNF) -> int:
    """|SL2(O/I)| via the prime factorization of I (Chinese remainders)."""
    return math.prod(order_sl2_prime_power(P, k) for P, k in factor_ideal(I))


@dataclass(frozen=True)
class IndexBounds:
    upper: int
    lower: int


def index_bounds(I: IdealHNF) -> IndexBounds:
    """[Gamma : Gamma(I)] lies in [lower, upper].

    ``upper`` is |SL2(O/I)|; the index can only be smaller if reduction
    mod I fails to be onto, which the brute-force oracle rules out for
    small I.  ``lower`` is the least positive integer r in I: the
    matrices ((1-m^2, m), (-m, 1)) for m = 1..r lie in distinct cosets.
    """
    return IndexBounds(order_sl2_quotient(I), min_rational_integer(I))


def residue_ring_tables(I: IdealHNF):
    """Enumerate O/I and return (residues, index, add table, mul table)."""
    K = I.field
    diag = [I.basis[i][i] for i in range(K.degree)]
    residues = [tuple(v) for v in itertools.product(*(range(h) for h in diag))]
    index = {v: i for i, v in enumerate(residues)}
    elems = [K.element(v) for v in residues]
    size = len(residues)
    add = [[index[reduce_vector(I.basis, (x + y).coords)] for y in elems] for x in elems]
    mul = [[index[reduce_vector(I.basis, (x * y).coords)] for y in elems] for x in elems]
    assert size == I.norm
    return residues, index, add, mul


def brute_force_image_order(I: IdealHNF, cap: int = BRUTE_FORCE_CAP) -> int:
    """Order of the image of SL2(O) in SL2(O/I), by closure under generators.

    Breadth-first search from the identity, right-multiplying by the
    elementary matrices E12(theta^j) and E21(theta^j).  These generate
    the image of SL2(O), so the count equals [Gamma : Gamma(I)].
    Raises CapExceeded if more than ``cap`` elements turn up.
    """
    K = I.field
    expected = order_sl2_quotient(I)
    if expected > cap:
        raise CapExceeded("|SL2(O/I)| = %d exceeds cap %d" % (expected, cap))
    residues, index, add, mul = residue_ring_tables(I)
    zero = index[reduce_vector(I.basis, K.zero.coords)]
    one = index[reduce_vector(I.basis, K.one.coords)]
    betas = sorted({index[reduce_vector(I.basis, x.coords)] for x in K.power_basis()} - {zero})
    start = (one, zero, zero, one)
    seen = {start}
    queue = deque([start])
    while queue:
        a, b, c, d = queue.popleft()
        for s in betas:
            for nxt in ((a, add[mul[a][s]][b], c, add[mul[c][s]][d]),
                        (add[a][mul[b][s]], b, add[c][mul[d][s]], d)):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        raise CapExceeded("closure passed cap %d" % cap)
                    queue.append(nxt)
    return len(seen)


def random_gamma_element(I: IdealHNF, word_length: int, seed: int, box: int = 2) -> MatrixSL2:
    """Seeded product of ``word_length`` elementary matrices with entries in I.

    Each step draws beta as an integer combination of the HNF rows of I
    with coefficients uniform in [-box, box], and alternates upper and
    lower elementary factors (the first kind is drawn too).
    """
    if word_length < 1:
        raise ValueError("word_length must be >= 1")
    rng = random.Random(seed)
    rows = I.elements()
    K = I.field
    upper = rng.random() < 0.5
    A = identity(K)
    for _ in range(word_length):
        beta = K.zero
        for row in rows:
            beta = beta + rng.randint(-box, box) * row
        A = A * (elementary_upper(beta) if upper else elementary_lower(beta))
        upper = not upper
    return A
