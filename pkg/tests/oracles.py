"""Independent reference computations used only by the tests.

None of these touch the HNF reduction, the Sturm root isolation, the
closed-form group orders or the BFS closure that they check.
"""

import itertools
from fractions import Fraction

import mpmath

mpmath.mp.dps = 50


def mp_roots(min_poly):
    """Real roots of an integer polynomial, high precision, increasing."""
    coeffs = [mpmath.mpf(c) for c in reversed(min_poly)]
    roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
    return sorted(mpmath.re(r) for r in roots)


def mp_embed(coords, roots):
    return [sum(mpmath.mpf(c) * r ** j for j, c in enumerate(coords)) for r in roots]


def mp_norm(coords, roots):
    return mpmath.fprod(mp_embed(coords, roots))


def solve_rational(rows, target):
    """Solve sum_i x_i rows[i] = target over Q (rows square, full rank)."""
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(target[j])] for j in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def lattice_contains(rows, vec):
    """Membership in the Z-span of ``rows`` by exact rational solving."""
    return all(x.denominator == 1 for x in solve_rational(rows, vec))


def residue_ring(I):
    """Elements of O/I as canonical tuples plus add/mul closures.

    Built from ``lattice_contains`` rather than HNF reduction: two vectors
    are identified when their difference lies in the ideal's lattice.
    """
    K = I.field
    diag = [I.basis[i][i] for i in range(K.degree)]
    reps = [K.element(v) for v in itertools.product(*(range(h) for h in diag))]
    rows = I.basis

    def find(x):
        for i, r in enumerate(reps):
            if lattice_contains(rows, [a - b for a, b in zip(x.coords, r.coords)]):
                return i
        raise AssertionError("no representative found")

    size = len(reps)
    add = [[find(reps[i] + reps[j]) for j in range(size)] for i in range(size)]
    mul = [[find(reps[i] * reps[j]) for j in range(size)] for i in range(size)]
    return reps, add, mul, find


def count_sl2(I):
    """|SL2(O/I)| by counting every quadruple with ad - bc = 1."""
    reps, add, mul, find = residue_ring(I)
    size = len(reps)
    one = find(I.field.one)
    # solutions d of a*d = v, for each a and v
    count_d = [[0] * size for _ in range(size)]
    for a in range(size):
        for d in range(size):
            count_d[a][mul[a][d]] += 1
    total = 0
    for b in range(size):
        for c in range(size):
            target = add[one][mul[b][c]]
            for a in range(size):
                total += count_d[a][target]
    return total


def count_sl2_zmod(m):
    """|SL2(Z/m)| by counting all m^4 matrices."""
    return sum(1 for a, b, c, d in itertools.product(range(m), repeat=4) if (a * d - b * c) % m == 1 % m)


def roots_mod_p(poly, p):
    return [r for r in range(p) if sum(c * r ** j for j, c in enumerate(poly)) % p == 0]
