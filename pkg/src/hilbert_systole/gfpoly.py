"""Polynomials over the prime field F_p and their factorization.

Polynomials are lists of ints in ``[0, p)``, lowest degree first, with no
trailing zeros.  Factorization is squarefree decomposition followed by
distinct-degree and Cantor-Zassenhaus equal-degree splitting, driven by a
seeded ``random.Random`` so results are reproducible.  For degree <= 3
there is also a plain root search, used as the default path there and as
a cross-check in the tests.
"""

from __future__ import annotations

import random

CZ_SEED = 20170317


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(f, p):
    return trim([c % p for c in f])


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return reduce(out, p)


def divmod_(f, g, p):
    g = trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        f = trim(f)
    return trim(q), f


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gcd(f, g, p):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, divmod_(f, g, p)[1]
    return monic(f, p)


def powmod(f, e, m, p):
    result = [1]
    base = divmod_(f, m, p)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, p), m, p)[1]
        base = divmod_(mul(base, base, p), m, p)[1]
        e >>= 1
    return result


def derivative(f, p):
    return trim([(i * f[i]) % p for i in range(1, len(f))])


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _pth_root(f, p):
    # f' == 0 means f(x) = g(x^p); over F_p the coefficients are their own p-th roots
    return [f[i] for i in range(0, len(f), p)]


def squarefree_decomposition(f, p):
    """Return [(g, k)] with f = lead * prod g**k, each g monic squarefree."""
    f = monic(reduce(f, p), p)
    if len(f) <= 1:
        return []
    out = {}
    df = derivative(f, p)
    if not df:
        for g, k in squarefree_decomposition(_pth_root(f, p), p):
            out[tuple(g)] = out.get(tuple(g), 0) + k * p
        return sorted(([list(g), k] for g, k in out.items()), key=lambda t: (t[1], t[0]))
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out[tuple(z)] = out.get(tuple(z), 0) + i
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        for g, k in squarefree_decomposition(_pth_root(c, p), p):
            out[tuple(g)] = out.get(tuple(g), 0) + k * p
    return [[list(g), k] for g, k in out.items()]


def distinct_degree(f, p):
    """Split a monic squarefree f into [(product of degree-d irreducibles, d)]."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = divmod_(h, f, p)[1] if len(f) > 1 else h
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of f into its degree-d irreducible factors."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            t, cur = a, a
            for _ in range(d - 1):
                cur = divmod_(mul(cur, cur, p), f, p)[1]
                t = add(t, cur, p)
            g = gcd(f, t, p)
        else:
            b = powmod(a, (p ** d - 1) // 2, f, p)
            g = gcd(f, sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor_cz(f, p, seed=CZ_SEED):
    rng = random.Random(seed)
    out = []
    for g, k in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for q in equal_degree(h, d, p, rng):
                out.append((q, k))
    return sort_factors(out)


def factor_by_roots(f, p):
    """Factor a polynomial of degree <= 3 by exhaustive root search."""
    f = monic(reduce(f, p), p)
    if len(f) - 1 > 3:
        raise ValueError("root search only decides factorizations up to degree 3")
    out = []
    for r in range(p):
        if len(f) <= 1:
            break
        k = 0
        while len(f) > 1 and evaluate(f, r, p) == 0:
            f = divmod_(f, [(-r) % p, 1], p)[0]
            k += 1
        if k:
            out.append(([(-r) % p, 1], k))
    if len(f) > 1:
        # remaining factor has no roots and degree <= 3, hence irreducible
        out.append((f, 1))
    return sort_factors(out)


def sort_factors(factors):
    return sorted(((list(g), k) for g, k in factors), key=lambda t: (len(t[0]), t[0], t[1]))


def factor(f, p, seed=CZ_SEED):
    f = reduce(f, p)
    if len(f) - 1 <= 3 and p <= 10 ** 5:
        return factor_by_roots(f, p)
    return factor_cz(f, p, seed)
