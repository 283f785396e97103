import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbert_systole.errors import DegenerateMatrix, NotHyperbolic, NotTotallyHyperbolic
from hilbert_systole.hyperbolic import (
    Kind,
    UpperHalfPoint,
    arccosh,
    axis_point,
    classify,
    displacement_at,
    displacement_lower_bound_single,
    distance,
    moebius_apply,
    product_distance,
    product_geodesic_length,
    translation_length,
)
from hilbert_systole.modular_group import MatrixSL2


def mp_distance(z, w):
    return mpmath.acosh(1 + ((z.x - w.x) ** 2 + (z.y - w.y) ** 2) / (2 * mpmath.mpf(z.y) * w.y))


def test_classify():
    assert classify(1).kind is Kind.ELLIPTIC
    assert classify(-2).kind is Kind.PARABOLIC
    assert classify(3).kind is Kind.HYPERBOLIC
    assert classify(2.0 + 1e-13).kind is Kind.PARABOLIC
    assert classify(-2.5).kind is Kind.HYPERBOLIC


def test_translation_length_values():
    # 2 cosh(l/2) = 3 gives l = 2 log((3 + sqrt 5)/2)
    assert translation_length(3) == pytest.approx(2 * math.log((3 + math.sqrt(5)) / 2), rel=1e-15)
    assert translation_length(3) == pytest.approx(1.9248473002384139, abs=1e-15)
    assert translation_length(-14) == pytest.approx(float(2 * mpmath.acosh(7)), abs=1e-14)
    assert translation_length(-14) == pytest.approx(5.267831587699267, abs=1e-14)


@pytest.mark.parametrize("tr", [2, -2, 1, 0, 1.5])
def test_translation_length_rejects_non_hyperbolic(tr):
    with pytest.raises(NotHyperbolic):
        translation_length(tr)


def test_single_factor_lower_bound():
    assert displacement_lower_bound_single(3) == pytest.approx(2 * math.log(2))
    assert displacement_lower_bound_single(-14) == pytest.approx(2 * math.log(13))
    assert displacement_lower_bound_single(3) <= translation_length(3)


def test_product_length():
    assert product_geodesic_length([3, 3]) == pytest.approx(math.sqrt(2) * 1.9248473002384139)
    assert product_geodesic_length([-14, -14]) == pytest.approx(math.sqrt(2) * 5.267831587699267)
    with pytest.raises(NotTotallyHyperbolic) as exc:
        product_geodesic_length([3, 2.0])
    assert tuple(exc.value.indices) == (2,)


def test_arccosh_large_argument_matches_mpmath():
    for x in (1.0, 1.5, 1199.5, 1e7, 1e8, 1e9, 1e15, 1e200):
        assert arccosh(x) == pytest.approx(float(mpmath.acosh(x)), rel=1e-15, abs=1e-15)
    with pytest.raises(ValueError):
        arccosh(0.5)


def test_moebius_translation():
    w = moebius_apply(((1.0, 1.0), (0.0, 1.0)), UpperHalfPoint(0.0, 1.0))
    assert (w.x, w.y) == (1.0, 1.0)
    d = distance(UpperHalfPoint(0.0, 1.0), w)
    assert d == pytest.approx(math.acosh(1.5), abs=1e-15)
    assert d == pytest.approx(0.9624236501192069, abs=1e-15)


def test_moebius_rejects_bad_determinant():
    with pytest.raises(DegenerateMatrix):
        moebius_apply(((1.0, 1.0), (1.0, 1.0)), UpperHalfPoint(0.0, 1.0))
    with pytest.raises(ValueError):
        UpperHalfPoint(0.0, 0.0)


_points = st.builds(UpperHalfPoint, st.floats(-5, 5), st.floats(0.05, 20))
_sl2 = st.tuples(st.floats(-4, 4), st.floats(-4, 4), st.floats(-4, 4)).filter(lambda t: abs(t[0]) > 0.1)


def _mat(t):
    a, b, c = t
    return ((a, b), (c, (1 + b * c) / a))


@settings(max_examples=100, deadline=None)
@given(_sl2, _sl2, _points)
def test_action_composes(s, t, z):
    m, n = _mat(s), _mat(t)
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    mn = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    lhs = moebius_apply(mn, z, det_tol=1e-6)
    rhs = moebius_apply(m, moebius_apply(n, z))
    assert distance(lhs, rhs) < 1e-6


@settings(max_examples=100, deadline=None)
@given(_sl2, _points, _points)
def test_isometry_and_mpmath_distance(s, z, w):
    m = _mat(s)
    d0 = distance(z, w)
    assert d0 == pytest.approx(float(mp_distance(z, w)), rel=1e-9, abs=1e-12)
    d1 = distance(moebius_apply(m, z), moebius_apply(m, w))
    assert d1 == pytest.approx(d0, rel=1e-7, abs=1e-7)


def test_axis_point_realizes_translation_length():
    rng = random.Random(8)
    for tr_target in (3, 7, -14, 2.5):
        for _ in range(5):
            a = rng.uniform(0.5, 3)
            c = rng.uniform(-3, 3)
            d = tr_target - a
            b = (a * d - 1) / c
            m = ((a, b), (c, d))
            z = axis_point(m, rng.uniform(-1, 1))
            assert distance(z, moebius_apply(m, z)) == pytest.approx(translation_length(a + d), rel=1e-7)
    m = ((2.0, 3.0), (0.0, 0.5))
    z = axis_point(m)
    assert distance(z, moebius_apply(m, z)) == pytest.approx(translation_length(2.5), rel=1e-9)


def test_displacement_never_below_translation_length(qsqrt5):
    A = MatrixSL2.from_ints(qsqrt5, [[2, 1], [1, 1]])
    ell = product_geodesic_length([3, 3])
    rng = random.Random(2)
    for _ in range(200):
        zs = [UpperHalfPoint(rng.uniform(-3, 3), math.exp(rng.uniform(-2, 2))) for _ in range(2)]
        assert displacement_at(zs, A) >= ell - 1e-9
    on_axis = [axis_point(m) for m in A.embedded()]
    assert displacement_at(on_axis, A) == pytest.approx(ell, rel=1e-9)
    with pytest.raises(ValueError):
        displacement_at(on_axis[:1], A)


def test_product_distance_is_euclidean_combination():
    z = [UpperHalfPoint(0, 1), UpperHalfPoint(0, 1)]
    w = [UpperHalfPoint(0, math.e), UpperHalfPoint(0, math.e ** 2)]
    assert product_distance(z, w) == pytest.approx(math.sqrt(5))
