"""Exact arithmetic in monogenic totally real fields.

A field is given by a monic irreducible integer polynomial ``f`` whose
roots are all real.  The ring of integers is assumed to be ``Z[theta]``
with ``f(theta) = 0``; elements are integer coordinate vectors in the
power basis ``1, theta, ..., theta^(n-1)``.  Nothing here checks that the
power basis really spans the maximal order, so callers must only use
monogenic fields (the presets are).

Real roots are isolated with a Sturm sequence, bracketed by bisection and
polished by safeguarded Newton steps, all in exact rational arithmetic.
Each root is stored as a dyadic rational within ``2**-ROOT_BITS`` of the
true root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldMismatch, NotMonic, NotSquarefree, NotTotallyReal, Reducible

ROOT_BITS = 96
MAX_DEGREE = 8
_FIXED_BITS = 128


# -- integer / rational polynomial helpers (ascending coefficients) ---------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: Sequence[int]) -> list:
    return [i * p[i] for i in range(1, len(p))]


def _poly_divmod(num, den):
    """Division over Q.  Returns (quotient, remainder) as Fraction lists."""
    num = [Fraction(c) for c in num]
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(_trim(num)) >= len(den):
        num = _trim(num)
        shift = len(num) - len(den)
        factor = num[-1] / lead
        q[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num = _trim(num)
    return _trim(q), _trim(num)


def _poly_gcd(a, b):
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _sturm_sequence(p):
    seq = [[Fraction(c) for c in p], [Fraction(c) for c in poly_derivative(p)]]
    while True:
        _, r = _poly_divmod(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append([-c for c in r])


def _sign_changes(seq, x):
    signs = []
    for q in seq:
        v = poly_eval(q, x)
        if v:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _sign(v):
    return (v > 0) - (v < 0)


def _refine_root(p, lo: Fraction, hi: Fraction, bits: int) -> Fraction:
    """Locate the unique root of ``p`` in ``(lo, hi]`` to within 2**-bits."""
    dp = poly_derivative(p)
    eps = Fraction(1, 1 << bits)
    s_hi = _sign(poly_eval(p, hi))
    if s_hi == 0:
        return hi
    # bisection until the bracket is narrow enough for Newton to be safe
    coarse = Fraction(1, 1 << 20)
    while hi - lo > coarse:
        mid = (lo + hi) / 2
        s = _sign(poly_eval(p, mid))
        if s == 0:
            return mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    x = (lo + hi) / 2
    scale = 1 << bits
    for _ in range(64):
        d = poly_eval(dp, x)
        if d == 0:
            break
        nxt = x - poly_eval(p, x) / d
        nxt = Fraction(round(nxt * scale), scale)
        if not lo < nxt <= hi or nxt == x:
            break
        x = nxt
    # certify: sign change across [x - eps, x + eps], otherwise bisect
    a, b = x - eps, x + eps
    if lo < a and b <= hi and _sign(poly_eval(p, a)) * _sign(poly_eval(p, b)) < 0:
        return x
    if _sign(poly_eval(p, x)) == 0:
        return x
    while hi - lo > eps:
        mid = (lo + hi) / 2
        s = _sign(poly_eval(p, mid))
        if s == 0:
            return mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def isolate_real_roots(p: Sequence[int], bits: int = ROOT_BITS) -> list[Fraction]:
    """All real roots of a squarefree integer polynomial, increasing."""
    p = _trim(p)
    n = len(p) - 1
    if n < 1:
        return []
    seq = _sturm_sequence(p)
    bound = Fraction(1) + max(Fraction(abs(c), abs(p[-1])) for c in p[:-1])
    lo, hi = -bound, bound
    stack = [(lo, hi, _sign_changes(seq, lo) - _sign_changes(seq, hi))]
    brackets = []
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            brackets.append((a, b))
            continue
        mid = (a + b) / 2
        v_mid = _sign_changes(seq, mid)
        stack.append((a, mid, _sign_changes(seq, a) - v_mid))
        stack.append((mid, b, v_mid - _sign_changes(seq, b)))
    brackets.sort()
    return [_refine_root(p, a, b, bits) for a, b in brackets]


# -- fields and elements -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class NumberField:
    """A monogenic totally real field ``Q[x]/(f)``.

    Construct through :func:`make_field`, which validates the polynomial.
    Two fields compare equal iff their minimal polynomials agree.
    """

    label: str
    min_poly: tuple
    degree: int
    roots: tuple          # dyadic Fractions, increasing
    embeddings: tuple     # the same roots as floats
    _reduction: tuple = field(repr=False)   # theta^k, k = n..2n-2, as coords
    _fixed_powers: tuple = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    @property
    def root_error(self) -> float:
        return 2.0 ** -ROOT_BITS

    def element(self, coords: Iterable[int]) -> "AlgebraicInteger":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError("expected %d coordinates, got %d" % (self.degree, len(coords)))
        return AlgebraicInteger(self, coords)

    def __call__(self, value) -> "AlgebraicInteger":
        if isinstance(value, AlgebraicInteger):
            _check_same(self, value.field)
            return value
        if isinstance(value, int):
            return AlgebraicInteger(self, (value,) + (0,) * (self.degree - 1))
        return self.element(value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def theta(self):
        if self.degree == 1:
            return self(-self.min_poly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def power_basis(self):
        return [self.element([int(i == j) for i in range(self.degree)]) for j in range(self.degree)]

    def descriptor(self) -> dict:
        return {"label": self.label, "min_poly": list(self.min_poly)}


def _check_same(f1, f2):
    if f1 is not f2 and f1 != f2:
        raise FieldMismatch("elements belong to different fields: %r vs %r" % (f1.label, f2.label))


@dataclass(frozen=True, eq=False)
class AlgebraicInteger:
    """Element of ``Z[theta]``, stored as power-basis coordinates."""

    field: NumberField
    coords: tuple

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, AlgebraicInteger):
            return NotImplemented
        return self.coords == other.coords and self.field == other.field

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "AlgebraicInteger(%s, %s)" % (self.field.label, list(self.coords))

    def _coerce(self, other):
        if isinstance(other, int):
            return self.field(other)
        if isinstance(other, AlgebraicInteger):
            _check_same(self.field, other.field)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicInteger(self.field, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicInteger(self.field, tuple(-x for x in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicInteger(self.field, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgebraicInteger(self.field, tuple(other * x for x in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicInteger(self.field, _mul_coords(self.field, self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not algebraic integers in general")
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])


def _mul_coords(K: NumberField, x: tuple, y: tuple) -> tuple:
    n = K.degree
    prod = [0] * (2 * n - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] += xi * yj
    out = prod[:n]
    for k in range(n, 2 * n - 1):
        ck = prod[k]
        if ck:
            for i, r in enumerate(K._reduction[k - n]):
                if r:
                    out[i] += ck * r
    return tuple(out)


# -- construction ------------------------------------------------------------

def _reduction_table(f):
    n = len(f) - 1
    # theta^n = -(f_0 + f_1 theta + ... + f_{n-1} theta^{n-1})
    cur = [-c for c in f[:n]]
    table = [tuple(cur)]
    for _ in range(n, 2 * n - 2):
        top = cur[-1]
        nxt = [0] + cur[:-1]
        nxt = [a + top * b for a, b in zip(nxt, table[0])]
        table.append(tuple(nxt))
        cur = nxt
    return tuple(table)


def _find_integer_factor(f, roots):
    n = len(f) - 1
    floats = [float(r) for r in roots]
    for k in range(1, n // 2 + 1):
        for subset in itertools.combinations(range(n), k):
            cand = [1.0]
            for idx in subset:
                cand = [(cand[i - 1] if i else 0.0) - floats[idx] * (cand[i] if i < len(cand) else 0.0)
                        for i in range(len(cand) + 1)]
            ints = [round(c) for c in cand]
            if any(abs(c - i) > 1e-6 * max(1.0, abs(c)) for c, i in zip(cand, ints)):
                continue
            _, rem = _poly_divmod(f, ints)
            if not rem:
                return ints
    return None


def make_field(min_poly: Sequence[int], label: str | None = None) -> NumberField:
    """Validate ``min_poly`` (ascending coefficients) and build the field.

    Raises NotMonic, NotSquarefree, NotTotallyReal or Reducible.
    Irreducibility is decided by trying every subset of the real roots as
    the root set of a monic integer factor, which is exhaustive because a
    monic integer factor of a totally real polynomial has real roots drawn
    from those of ``min_poly``.
    """
    if any(isinstance(c, bool) or int(c) != c for c in min_poly):
        raise NotMonic("coefficients must be integers")
    f = _trim([int(c) for c in min_poly])
    if len(f) < 2:
        raise NotMonic("degree must be at least 1")
    if f[-1] != 1:
        raise NotMonic("leading coefficient is %d, expected 1" % f[-1])
    n = len(f) - 1
    if n > MAX_DEGREE:
        raise ValueError("degree %d exceeds the supported maximum %d" % (n, MAX_DEGREE))
    if len(_poly_gcd(f, poly_derivative(f))) > 1:
        raise NotSquarefree("polynomial shares a factor with its derivative")
    roots = isolate_real_roots(f)
    if len(roots) != n:
        raise NotTotallyReal("only %d of %d roots are real" % (len(roots), n))
    factor = _find_integer_factor(f, roots)
    if factor is not None:
        raise Reducible("polynomial has the monic factor %s" % (factor,))
    scale = 1 << _FIXED_BITS
    fixed = tuple(tuple(round(r ** j * scale) for j in range(n)) for r in roots)
    if label is None:
        label = "poly" + "_".join(str(c) for c in f)
    return NumberField(
        label=label,
        min_poly=tuple(f),
        degree=n,
        roots=tuple(roots),
        embeddings=tuple(float(r) for r in roots),
        _reduction=_reduction_table(f),
        _fixed_powers=fixed,
    )


PRESETS = {
    "rationals": (0, 1),
    "q-sqrt2": (-2, 0, 1),
    "q-sqrt3": (-3, 0, 1),
    "q-sqrt5": (-1, -1, 1),
    "cubic-7": (-1, -2, 1, 1),
}


def preset(name: str) -> NumberField:
    try:
        poly = PRESETS[name]
    except KeyError:
        raise KeyError("unknown preset %r (choose from %s)" % (name, ", ".join(sorted(PRESETS))))
    return make_field(poly, label=name)


# -- norm, trace, embeddings -------------------------------------------------

def mul_matrix(a: AlgebraicInteger) -> list[list[int]]:
    """Matrix of multiplication by ``a``: column j holds the coords of a*theta^j."""
    K = a.field
    cols = []
    cur = a.coords
    theta = K.theta.coords if K.degree > 1 else None
    for j in range(K.degree):
        cols.append(cur)
        if j + 1 < K.degree:
            cur = _mul_coords(K, cur, theta)
    return [[cols[j][i] for j in range(K.degree)] for i in range(K.degree)]


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def norm(a: AlgebraicInteger) -> int:
    if a.field.degree == 1:
        return a.coords[0]
    return det_bareiss(mul_matrix(a))


def trace(a: AlgebraicInteger) -> int:
    m = mul_matrix(a)
    return sum(m[i][i] for i in range(len(m)))


def embed(a: AlgebraicInteger) -> tuple:
    """Real images (sigma_1(a), ..., sigma_n(a)), ordered like the roots."""
    scale = 1 << _FIXED_BITS
    return tuple(sum(c * p for c, p in zip(a.coords, powers)) / scale
                 for powers in a.field._fixed_powers)


def embed_error_bound(a: AlgebraicInteger) -> float:
    """Absolute error bound valid for every entry of ``embed(a)``.

    Root error times the derivative of the power basis, plus the
    fixed-point rounding and the final float conversion.
    """
    K = a.field
    n = K.degree
    big = max(max(abs(r) for r in K.embeddings), 1.0) + 1e-6
    mag = sum(abs(c) for c in a.coords)
    root_part = mag * K.root_error * n * big ** (n - 1)
    fixed_part = mag * 2.0 ** -_FIXED_BITS
    value_part = mag * big ** (n - 1) * 2.0 ** -52
    return root_part + fixed_part + value_part


def embed_with_bound(a: AlgebraicInteger):
    return embed(a), embed_error_bound(a)


def exact_quotient(num: AlgebraicInteger, den: AlgebraicInteger):
    """``num / den`` if the quotient lies in Z[theta], else ``None``."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero element")
    cof, nrm = cofactor(den)
    q = num * cof
    if any(c % nrm for c in q.coords):
        return None
    return AlgebraicInteger(num.field, tuple(c // nrm for c in q.coords))


def cofactor(a: AlgebraicInteger):
    """Return ``(b, N)`` with ``a * b == N == norm(a)``; ``b`` is integral."""
    m = mul_matrix(a)
    n = len(m)
    nrm = norm(a)
    # solve m x = nrm * e_0 over Q; the solution is integral (adjugate column)
    aug = [[Fraction(v) for v in row] + [Fraction(nrm if i == 0 else 0)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    sol = [aug[i][n] for i in range(n)]
    assert all(s.denominator == 1 for s in sol)
    return AlgebraicInteger(a.field, tuple(int(s) for s in sol)), nrm

