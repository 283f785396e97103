"""Systole bounds for principal congruence covers, and empirical checks.

For an ideal I of norm N in a field of degree n:

* lower bound  (4/sqrt(n)) log N - 2 sqrt(n) log 40, valid once N >= 40^(n/2)
* index form   (4/(3 sqrt(n))) log |SL2(O/I)| - 2 sqrt(n) log 40
* upper bound  sqrt(n) * translation length of ((1-N^2, N), (-N, 1)),
  itself at most 4 sqrt(n) log N, itself at most 4 n^(3/2) log [index]

All logarithms are natural.  ``search_shortest`` scans a box of Gamma(I)
for totally hyperbolic elements; its minimum is an upper estimate of the
systole, never a certified value.
"""

from __future__ import annotations

import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import hyperbolic as hyp
from .errors import BudgetExceeded, NormTooSmall
from .ideals import IdealHNF, contains, min_rational_integer, pow_ideal
from .modular_group import (
    MatrixSL2,
    in_gamma,
    lemma1_check,
    lemma2_bound,
    lemma2_check,
    order_sl2_quotient,
    random_gamma_element,
    trace_decomposition,
)
from .number_field import AlgebraicInteger, cofactor, embed, embed_error_bound

log = logging.getLogger(__name__)

LOG40 = math.log(40.0)
DEFAULT_SEARCH_CAP = 10 ** 8
SLACK = 1e-9


def free_action_check(I: IdealHNF) -> bool:
    """N(I) >= 4^n: Gamma(I) then acts freely and M_I is a manifold."""
    return I.norm >= 4 ** I.field.degree


def lower_bound_valid(I: IdealHNF) -> bool:
    # N >= 40^(n/2)  <=>  N^2 >= 40^n
    return I.norm ** 2 >= 40 ** I.field.degree


@dataclass(frozen=True)
class LowerBound:
    value: float
    valid: bool


def systole_lower_bound(I: IdealHNF) -> LowerBound:
    n = I.field.degree
    value = 4.0 / math.sqrt(n) * math.log(I.norm) - 2.0 * math.sqrt(n) * LOG40
    return LowerBound(value, lower_bound_valid(I))


def theorem_bound(I: IdealHNF, order: Optional[int] = None) -> float:
    n = I.field.degree
    if order is None:
        order = order_sl2_quotient(I)
    return 4.0 / (3.0 * math.sqrt(n)) * math.log(order) - 2.0 * math.sqrt(n) * LOG40


def upper_bound_closed_form(I: IdealHNF) -> float:
    return 4.0 * math.sqrt(I.field.degree) * math.log(I.norm)


def upper_bound_index_form(I: IdealHNF, order: Optional[int] = None) -> float:
    n = I.field.degree
    if order is None:
        order = order_sl2_quotient(I)
    return 4.0 * n ** 1.5 * math.log(order)


@dataclass(frozen=True)
class Witness:
    matrix: MatrixSL2
    trace: int
    length: float


def witness_matrix(I: IdealHNF) -> MatrixSL2:
    N = I.norm
    return MatrixSL2.from_ints(I.field, [[1 - N * N, N], [-N, 1]])


def upper_bound_witness(I: IdealHNF) -> Witness:
    """The matrix ((1-N^2, N), (-N, 1)) and the length of its closed geodesic.

    Its trace 2 - N^2 is rational, so every embedding sees the same
    hyperbolic matrix and the product length is sqrt(n) times one factor.
    """
    N = I.norm
    if N <= 2:
        raise NormTooSmall("witness needs N(I) > 2, got %d" % N)
    B = witness_matrix(I)
    if not in_gamma(B, I):
        raise AssertionError("witness matrix is not in Gamma(I)")
    tr = B.trace().coords[0]
    if abs(tr) != N * N - 2:
        raise AssertionError("witness trace %d != N^2 - 2" % tr)
    n = I.field.degree
    length = math.sqrt(n) * hyp.translation_length(tr)
    if length > upper_bound_closed_form(I) + SLACK:
        raise AssertionError("witness length exceeds 4 sqrt(n) log N")
    return Witness(B, tr, length)


# -- box search --------------------------------------------------------------

def lattice_points_in_box(I: IdealHNF, bound: int, offset=None) -> list:
    """Coordinate tuples of ``offset + I`` with every coordinate in [-bound, bound].

    Walks the triangular basis from the top coordinate down, so only
    admissible coefficient ranges are visited.  Sorted output.
    """
    basis = I.basis
    n = len(basis)
    off = list(offset) if offset is not None else [0] * n
    out = []

    def rec(i, partial):
        if i < 0:
            out.append(tuple(partial))
            return
        h = basis[i][i]
        base = partial[i]
        lo = -((bound + base) // h)          # ceil((-bound - base) / h)
        hi = (bound - base) // h
        row = basis[i]
        for k in range(lo, hi + 1):
            nxt = list(partial)
            for j in range(i + 1):
                nxt[j] += k * row[j]
            rec(i - 1, nxt)

    rec(n - 1, off)
    out.sort()
    return out


def _candidate_length(tr: AlgebraicInteger):
    """Product length for a totally hyperbolic trace, else None."""
    if tr.is_rational():
        t = tr.coords[0]
        if abs(t) <= 2:
            return None
        return math.sqrt(tr.field.degree) * hyp.translation_length(t)
    values = embed(tr)
    if any(hyp.classify(v).kind is not hyp.Kind.HYPERBOLIC for v in values):
        return None
    return hyp.product_geodesic_length(values)


@dataclass
class _ScanState:
    best: Optional[tuple] = None          # (length, key, matrix)
    tuples: int = 0
    accepted: int = 0
    hyperbolic: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    def offer(self, length, A):
        cand = (length, A.key())
        if self.best is None or cand < self.best[:2]:
            self.best = (length, A.key(), A)

    def merge(self, other: "_ScanState"):
        self.tuples += other.tuples
        self.accepted += other.accepted
        self.hyperbolic += other.hyperbolic
        self.skipped += other.skipped
        self.violations.extend(other.violations)
        if other.best is not None:
            self.offer(other.best[0], other.best[2])


def _scan(I, bs, cs, a_list, lower, budget):
    """Scan b in bs, c in cs, a in a_list; stop after ``budget`` tuples."""
    K = I.field
    state = _ScanState()
    cofs = [(K.element(a), cofactor(K.element(a))) for a in a_list if any(a)]
    for bc in bs:
        b = K.element(bc)
        for cc in cs:
            c = K.element(cc)
            t = b * c + 1
            for a, (cof, nrm) in cofs:
                if state.tuples >= budget:
                    return state, False
                state.tuples += 1
                q = t * cof
                if any(x % nrm for x in q.coords):
                    continue
                d = AlgebraicInteger(K, tuple(x // nrm for x in q.coords))
                if not contains(I, d - 1):
                    continue
                A = MatrixSL2(a, b, c, d)
                state.accepted += 1
                length = _candidate_length(A.trace())
                if length is None:
                    state.skipped += 1
                    continue
                state.hyperbolic += 1
                if lower is not None and length < lower - SLACK:
                    state.violations.append({"length": length, "matrix": A.to_json()})
                state.offer(length, A)
    return state, True


def _scan_job(args):
    return _scan(*args)[0]


@dataclass(frozen=True)
class SearchResult:
    length: float
    matrix: MatrixSL2
    search_height: int
    exhaustive: bool
    advisory: bool                 # free action not certified for this ideal
    tuples: int
    accepted: int
    totally_hyperbolic: int
    skipped_not_totally_hyperbolic: int
    lower_bound_violations: tuple

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "matrix": self.matrix.to_json(),
            "search_height": self.search_height,
            "exhaustive": self.exhaustive,
            "advisory": self.advisory,
            "candidates": {
                "tuples": self.tuples,
                "accepted": self.accepted,
                "totally_hyperbolic": self.totally_hyperbolic,
                "skipped_not_totally_hyperbolic": self.skipped_not_totally_hyperbolic,
            },
            "lower_bound_violations": list(self.lower_bound_violations),
        }


def search_shortest(I: IdealHNF, height: int, cap: int = DEFAULT_SEARCH_CAP,
                    workers: int = 1) -> SearchResult:
    """Shortest totally hyperbolic element of Gamma(I) found in a box.

    b and c range over elements of I, and a over 1 + I, with every
    power-basis coordinate in [-height*r, height*r] where r is the least
    positive integer in I; d = (1 + bc)/a must be integral and congruent
    to 1 mod I.  The witness ((1-N^2, N), (-N, 1)) is always a candidate.
    Ties on length are broken by the smallest coordinate tuple.

    Raises BudgetExceeded (carrying the partial result) once more than
    ``cap`` (a, b, c) tuples would be needed.  With ``workers > 1`` the b
    loop is split across processes; the merged result is identical.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    K = I.field
    r = min_rational_integer(I)
    bound = height * r
    lb = systole_lower_bound(I)
    lower = lb.value if lb.valid else None
    bs = lattice_points_in_box(I, bound)
    a_list = lattice_points_in_box(I, bound, offset=K.one.coords)
    total = len(bs) * len(bs) * len(a_list)
    log.info("search: %d b/c values, %d a values, %d tuples", len(bs), len(a_list), total)

    state = _ScanState()
    if total <= cap and workers > 1 and len(bs) > 1:
        chunks = [bs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_job, [(I, ch, bs, a_list, lower, cap) for ch in chunks if ch]):
                state.merge(part)
        complete = True
    else:
        part, complete = _scan(I, bs, bs, a_list, lower, cap)
        state.merge(part)

    if I.norm > 2:
        w = upper_bound_witness(I)
        if lower is not None and w.length < lower - SLACK:
            state.violations.append({"length": w.length, "matrix": w.matrix.to_json()})
        state.offer(w.length, w.matrix)

    if state.best is None:
        raise ValueError("no totally hyperbolic candidate found and N(I) <= 2 leaves no witness")
    result = SearchResult(
        length=state.best[0],
        matrix=state.best[2],
        search_height=height,
        exhaustive=complete,
        advisory=not free_action_check(I),
        tuples=state.tuples,
        accepted=state.accepted,
        totally_hyperbolic=state.hyperbolic,
        skipped_not_totally_hyperbolic=state.skipped,
        lower_bound_violations=tuple(state.violations),
    )
    if not complete:
        raise BudgetExceeded("search needs %d tuples, cap is %d" % (total, cap), partial=result)
    return result


# -- randomized verification of the lemmas -----------------------------------

@dataclass
class SuiteReport:
    samples: int = 0
    y0_zero: int = 0
    lemma1_membership_fail: int = 0
    lemma1_norm_fail: int = 0
    lemma2_fail: int = 0
    trace_sandwich_checks: int = 0
    trace_sandwich_fail: int = 0
    displacement_applicable: bool = False
    displacement_bound: float = 0.0
    displacement_checks: int = 0
    displacement_fail: int = 0
    min_displacement: Optional[float] = None
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.lemma1_membership_fail or self.lemma1_norm_fail or self.lemma2_fail
                    or self.trace_sandwich_fail or self.displacement_fail)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def random_product_point(rng: random.Random, n: int):
    return [hyp.UpperHalfPoint(rng.uniform(-3.0, 3.0), math.exp(rng.uniform(-3.0, 3.0)))
            for _ in range(n)]


def trace_sandwich_holds(A: MatrixSL2) -> bool:
    """|2 s(y0)| - 2 <= |tr s(A)| <= 2 + |2 s(y0)| at every embedding s."""
    td = trace_decomposition(A)
    trs, ys = embed(td.dx0), embed(td.dy0)
    tol = embed_error_bound(td.dx0) + embed_error_bound(td.dy0)
    return all(abs(y) - 2.0 <= abs(t) + tol and abs(t) <= 2.0 + abs(y) + tol
               for t, y in zip(trs, ys))


def verify_suite(I: IdealHNF, samples: int, seed: int, points: int = 10,
                 max_word: int = 6) -> SuiteReport:
    """Check both lemmas, the trace sandwich and the displacement bound on samples.

    Matrices come from ``random_gamma_element`` with word lengths drawn in
    1..max_word.  The displacement bound is tested at ``points`` random
    points for every sample with y0 != 0, whenever N(I) >= 40^(n/2).
    Failures are recorded, never raised.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    n = I.field.degree
    I2 = pow_ideal(I, 2)
    lb = systole_lower_bound(I)
    rep = SuiteReport(displacement_applicable=lb.valid, displacement_bound=lb.value)
    for _ in range(samples):
        A = random_gamma_element(I, rng.randint(1, max_word), rng.getrandbits(32))
        rep.samples += 1
        rep.trace_sandwich_checks += n
        if not trace_sandwich_holds(A):
            rep.trace_sandwich_fail += 1
            rep.counterexamples.append({"check": "trace_sandwich", "matrix": A.to_json()})
        td = trace_decomposition(A)
        if td.dy0.is_zero():
            rep.y0_zero += 1
            continue
        l1 = lemma1_check(A, I, I2)
        if not l1.membership_ok:
            rep.lemma1_membership_fail += 1
            rep.counterexamples.append({"check": "lemma1_membership", "matrix": A.to_json()})
        if not l1.norm_ok:
            rep.lemma1_norm_fail += 1
            rep.counterexamples.append({"check": "lemma1_norm", "matrix": A.to_json()})
        if not lemma2_check(A, I):
            rep.lemma2_fail += 1
            rep.counterexamples.append({"check": "lemma2", "matrix": A.to_json()})
        if lb.valid:
            for _ in range(points):
                z = random_product_point(rng, n)
                dist = hyp.displacement_at(z, A)
                rep.displacement_checks += 1
                if rep.min_displacement is None or dist < rep.min_displacement:
                    rep.min_displacement = dist
                if dist < lb.value - SLACK:
                    rep.displacement_fail += 1
                    rep.counterexamples.append({
                        "check": "displacement", "matrix": A.to_json(),
                        "point": [[p.x, p.y] for p in z], "displacement": dist})
    return rep


__all__ = [
    "LowerBound", "SearchResult", "SuiteReport", "Witness",
    "trace_sandwich_holds", "free_action_check", "lattice_points_in_box", "lemma2_bound",
    "search_shortest", "systole_lower_bound", "theorem_bound", "upper_bound_closed_form",
    "upper_bound_index_form", "upper_bound_witness", "verify_suite", "witness_matrix",
]
