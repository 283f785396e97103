"""Isometries of the upper half plane and of products of half planes."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateMatrix, NotHyperbolic, NotTotallyHyperbolic

PARABOLIC_TOL = 1e-12
_ACOSH_SWITCH = 1e8


class Kind(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class IsometryClass:
    kind: Kind
    trace: float


@dataclass(frozen=True)
class UpperHalfPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("point must have positive imaginary part, got %r" % self.y)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


ProductPoint = Sequence[UpperHalfPoint]


def classify(tr) -> IsometryClass:
    """Classify by |trace|.  Integer traces are decided exactly."""
    t = abs(tr)
    if isinstance(tr, int):
        kind = Kind.ELLIPTIC if t < 2 else Kind.PARABOLIC if t == 2 else Kind.HYPERBOLIC
    elif abs(t - 2.0) <= PARABOLIC_TOL:
        kind = Kind.PARABOLIC
    else:
        kind = Kind.ELLIPTIC if t < 2 else Kind.HYPERBOLIC
    return IsometryClass(kind, float(tr))


def arccosh(x: float) -> float:
    if x < 1.0:
        raise ValueError("arccosh needs x >= 1")
    if x > _ACOSH_SWITCH:
        # log(x + sqrt(x^2 - 1)) = log(2x) - 1/(4x^2) - 3/(32x^4) - ...
        inv2 = 1.0 / (x * x)
        return math.log(2.0) + math.log(x) - inv2 / 4.0 - 3.0 * inv2 * inv2 / 32.0
    return math.log(x + math.sqrt((x - 1.0) * (x + 1.0)))


def _is_hyperbolic(tr) -> bool:
    return classify(tr).kind is Kind.HYPERBOLIC


def translation_length(tr) -> float:
    """Minimal displacement 2 arccosh(|tr|/2) of a hyperbolic element."""
    if not _is_hyperbolic(tr):
        raise NotHyperbolic("|trace| = %r is not > 2" % abs(tr))
    return 2.0 * arccosh(abs(tr) / 2.0)


def displacement_lower_bound_single(tr) -> float:
    """2 log(|tr| - 1), a lower bound for d(z, Bz) valid at every z."""
    if not _is_hyperbolic(tr):
        raise NotHyperbolic("|trace| = %r is not > 2" % abs(tr))
    return 2.0 * math.log(abs(tr) - 1.0)


def product_geodesic_length(traces: Sequence) -> float:
    bad = [i + 1 for i, t in enumerate(traces) if not _is_hyperbolic(t)]
    if bad:
        raise NotTotallyHyperbolic(bad)
    return math.sqrt(math.fsum(translation_length(t) ** 2 for t in traces))


def moebius_apply(m, z: UpperHalfPoint, det_tol: float = 1e-9) -> UpperHalfPoint:
    """Act by ((a, b), (c, d)) on z through (az + b) / (cz + d)."""
    (a, b), (c, d) = m
    det = a * d - b * c
    if abs(det - 1.0) > det_tol * max(1.0, abs(a * d), abs(b * c)):
        raise DegenerateMatrix("determinant %r is not 1" % det)
    x, y = z.x, z.y
    den = (c * x + d) ** 2 + (c * y) ** 2
    if den == 0.0:
        raise DegenerateMatrix("cz + d vanishes")
    # Im((az+b)/(cz+d)) = y / |cz+d|^2 when det = 1, which keeps it positive
    re = ((a * x + b) * (c * x + d) + a * c * y * y) / den
    return UpperHalfPoint(re, y / den)


def distance(z: UpperHalfPoint, w: UpperHalfPoint) -> float:
    """Hyperbolic distance; cosh d = 1 + |z-w|^2 / (2 Im z Im w).

    Evaluated as 2 asinh(|z-w| / (2 sqrt(Im z Im w))), which is the same
    quantity without the cancellation near d = 0.
    """
    chord = math.hypot(z.x - w.x, z.y - w.y)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(z.y * w.y)))


def product_distance(zs: ProductPoint, ws: ProductPoint) -> float:
    return math.sqrt(math.fsum(distance(z, w) ** 2 for z, w in zip(zs, ws)))


def displacement_at(zs: ProductPoint, A) -> float:
    """d(z, Az) in the product of half planes, A acting through its embeddings."""
    mats = A.embedded()
    if len(mats) != len(zs):
        raise ValueError("point has %d factors, field degree is %d" % (len(zs), len(mats)))
    return product_distance(zs, [moebius_apply(m, z) for m, z in zip(mats, zs)])


def axis_point(m, t: float = 0.0) -> UpperHalfPoint:
    """Point on the axis of a hyperbolic real matrix (t parametrizes the axis)."""
    (a, b), (c, d) = m
    tr = a + d
    if abs(tr) <= 2:
        raise NotHyperbolic("matrix is not hyperbolic")
    if c == 0:
        # axis is the vertical line through the finite fixed point b/(d-a)
        return UpperHalfPoint(b / (d - a), math.exp(t))
    root = math.sqrt(tr * tr - 4.0)
    p, q = (a - d + root) / (2 * c), (a - d - root) / (2 * c)
    center, radius = (p + q) / 2, abs(p - q) / 2
    return UpperHalfPoint(center + radius * math.tanh(t), radius / math.cosh(t))
