import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from triconic.errors import DegenerateTriangle, ParallelLines, PointAtInfinity
from triconic.geom import (
    BaryCoords,
    Point2,
    Triangle,
    bary_to_cartesian,
    cartesian_to_bary,
    collinear,
    concurrent,
    distance,
    line_intersection,
    line_through,
    reflect_about_line,
    reflect_about_point,
    signed_area,
)


def test_triangle_sides_and_semiperimeter(t345):
    assert t345.sides() == (4.0, 3.0, 5.0)
    assert t345.semiperimeter == 6.0


def test_degenerate_triangle_rejected():
    with pytest.raises(DegenerateTriangle):
        Triangle(Point2(0, 0), Point2(1, 1), Point2(2, 2))


def test_bary_to_cartesian_examples(t345):
    p = bary_to_cartesian(t345, BaryCoords(1, 1, -1))
    assert distance(p, Point2(4, 3)) < 1e-12
    assert distance(bary_to_cartesian(t345, BaryCoords(1, 0, 0)), t345.a) == 0.0
    p = bary_to_cartesian(t345, BaryCoords(0, 3, -1))
    assert distance(p, Point2(6, 0)) < 1e-12


def test_bary_to_cartesian_point_at_infinity(t345):
    with pytest.raises(PointAtInfinity):
        bary_to_cartesian(t345, BaryCoords(1.0, 1.0, -2.0))


def test_cartesian_to_bary_examples(t345):
    centroid = Point2(4 / 3, 1.0)
    b = cartesian_to_bary(t345, centroid).normalized()
    assert b.proj_eq(BaryCoords(1, 1, 1), tol=1e-12)
    assert cartesian_to_bary(t345, t345.b).proj_eq(BaryCoords(0, 1, 0), tol=1e-12)
    assert cartesian_to_bary(t345, Point2(4, 3)).proj_eq(BaryCoords(1, 1, -1), tol=1e-12)


def test_bary_round_trip(rng):
    for _ in range(200):
        pts = rng.uniform(-1, 1, (3, 2))
        try:
            t = Triangle(*(Point2(*q) for q in pts))
        except DegenerateTriangle:
            continue
        b = BaryCoords(*rng.uniform(-1, 1, 3))
        if abs(b.u + b.v + b.w) < 1e-3:
            continue
        p = bary_to_cartesian(t, b)
        assert cartesian_to_bary(t, p).proj_eq(b.normalized(), tol=1e-10)


def test_signed_area():
    assert signed_area(Point2(0, 0), Point2(1, 0), Point2(0, 1)) == 0.5
    assert signed_area(Point2(0, 0), Point2(1, 1), Point2(2, 2)) == 0.0
    assert signed_area(Point2(0, 3), Point2(4, 0), Point2(0, 0)) == -6.0


@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10),
       st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10))
def test_signed_area_antisymmetric(px, py, qx, qy, rx, ry):
    p, q, r = Point2(px, py), Point2(qx, qy), Point2(rx, ry)
    # Exact up to roundoff: swapping changes the shoelace anchor point.
    assert signed_area(p, q, r) == pytest.approx(-signed_area(q, p, r), abs=1e-12)


def test_line_ops():
    p = line_intersection(
        line_through(Point2(0, 0), Point2(1, 1)),
        line_through(Point2(0, 1), Point2(1, 0)),
    )
    assert distance(p, Point2(0.5, 0.5)) < 1e-14
    with pytest.raises(ParallelLines):
        line_intersection(
            line_through(Point2(0, 0), Point2(1, 0)),
            line_through(Point2(0, 1), Point2(1, 1)),
        )


def test_reflect_about_point():
    assert distance(reflect_about_point(Point2(0, 0), Point2(2, 1.5)), Point2(4, 3)) == 0.0


def test_reflect_about_line():
    # Mirror of (1,1) over 3x+4y=12: midpoint on the line, offset parallel to
    # the normal; works out to (11/5, 13/5).
    line = line_through(Point2(4, 0), Point2(0, 3))
    q = reflect_about_line(Point2(1, 1), line)
    assert distance(q, Point2(2.2, 2.6)) < 1e-12
    mid = Point2((1 + q.x) / 2, (1 + q.y) / 2)
    assert abs(line.eval_point(mid)) < 1e-12


def test_medians_concurrent(rng):
    for _ in range(20):
        pts = rng.uniform(0, 1, (3, 2))
        try:
            t = Triangle(*(Point2(*q) for q in pts))
        except DegenerateTriangle:
            continue
        from triconic.geom import midpoint

        m1 = line_through(t.a, midpoint(t.b, t.c))
        m2 = line_through(t.b, midpoint(t.c, t.a))
        m3 = line_through(t.c, midpoint(t.a, t.b))
        assert concurrent(m1, m2, m3)


def test_collinearity_scale_invariant(rng):
    base = [Point2(0.1, 0.7), Point2(0.4, 0.2), Point2(0.9, 0.9)]
    for scale in (1e-3, 1.0, 1e3):
        pts = [Point2(p.x * scale, p.y * scale) for p in base]
        assert not collinear(*pts)
        on_line = [Point2(s * scale, (2 * s + 1) * scale) for s in (0.0, 0.3, 0.8)]
        assert collinear(*on_line)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_projective_normalization(u, v, w):
    if u == 0 and v == 0 and w == 0:
        return
    b = BaryCoords(u, v, w)
    n = b.normalized()
    assert max(abs(n.u), abs(n.v), abs(n.w)) == pytest.approx(1.0)
    for t in (n.u, n.v, n.w):
        if t != 0.0:
            assert t > 0.0
            break
    for k in (2.0, -3.5):
        assert BaryCoords(k * u, k * v, k * w).normalized().proj_eq(n, tol=1e-12)
