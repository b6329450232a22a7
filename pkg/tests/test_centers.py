import math

import numpy as np
import pytest

from triconic.centers import (
    anticevian_triangle,
    center_bary,
    cevian_triangle,
    circumcircle,
    classic_center,
    excircle_tangency_points,
    excircles,
    half_tangent_sum,
    incircle,
    intouch_extouch,
    kissing_circles,
    reflection_triangle,
    soddy,
    soddy_centers,
)
from triconic.geom import BaryCoords, Point2, Triangle, bary_to_cartesian, distance
from triconic.verify import random_triangle


def test_classic_centers_345(t345):
    assert distance(classic_center(t345, "X8"), Point2(2, 1)) < 1e-12
    assert distance(classic_center(t345, "X20"), Point2(4, 3)) < 1e-12
    assert center_bary(t345, "X20").proj_eq(BaryCoords(1, 1, -1), tol=1e-12)


def test_equilateral_centers_coincide(equilateral):
    centroid = bary_to_cartesian(equilateral, BaryCoords(1, 1, 1))
    for cid in ("X3", "X4", "X6", "X7", "X8", "X20"):
        assert distance(classic_center(equilateral, cid), centroid) < 1e-12


def test_incircle_excircles_circumcircle(t345):
    inc = incircle(t345)
    assert distance(inc.center, Point2(1, 1)) < 1e-12
    assert inc.radius == pytest.approx(1.0)
    cc = circumcircle(t345)
    assert distance(cc.center, Point2(2, 1.5)) < 1e-12
    assert cc.radius == pytest.approx(2.5)
    ra, rb, rc = (c.radius for c in excircles(t345))
    # r_X = area / (s - side): 6/2, 6/3, 6/1
    assert (ra, rb, rc) == pytest.approx((3.0, 2.0, 6.0))


def test_equilateral_radii():
    t = Triangle(Point2(0, 0), Point2(1, 0), Point2(0.5, math.sqrt(3) / 2))
    assert circumcircle(t).radius == pytest.approx(1 / math.sqrt(3))
    assert incircle(t).radius == pytest.approx(1 / (2 * math.sqrt(3)))


def test_excircle_tangency_points_345(t345):
    pts = excircle_tangency_points(t345)
    expect = [(6, 0), (-2, 0), (0, -3), (0, 6), (-0.8, 3.6), (4.8, -0.6)]
    for p, e in zip(pts, expect):
        assert distance(p, Point2(*e)) < 1e-12


def test_tangency_lengths_eq1(rng):
    # |C A1| = p, |B A1| = p - a, and the pair spans |A1 A2| = b + c.
    for _ in range(50):
        t = random_triangle(rng)
        a, b, c = t.sides()
        p = t.semiperimeter
        A1, A2, B1, B2, C1, C2 = excircle_tangency_points(t)
        assert distance(t.c, A1) == pytest.approx(p, abs=1e-10)
        assert distance(t.b, A1) == pytest.approx(p - a, abs=1e-10)
        assert distance(t.b, A2) == pytest.approx(p, abs=1e-10)
        assert distance(t.c, A2) == pytest.approx(p - a, abs=1e-10)
        assert distance(t.a, B1) == pytest.approx(p, abs=1e-10)
        assert distance(t.c, B1) == pytest.approx(p - b, abs=1e-10)
        assert distance(t.a, C1) == pytest.approx(p - c, abs=1e-10)
        assert distance(t.b, C1) == pytest.approx(p, abs=1e-10)
        assert distance(A1, A2) == pytest.approx(b + c, abs=1e-10)


def test_intouch_extouch_345(t345):
    ins, exts = intouch_extouch(t345)
    assert distance(ins[0], Point2(1, 0)) < 1e-12
    assert distance(exts[0], Point2(3, 0)) < 1e-12


def test_intouch_extouch_equal_area(rng):
    from triconic.geom import signed_area

    for _ in range(50):
        t = random_triangle(rng)
        ins, exts = intouch_extouch(t)
        a1 = abs(signed_area(*ins))
        a2 = abs(signed_area(*exts))
        assert a1 == pytest.approx(a2, rel=1e-9)


def test_kissing_circles(t345):
    ca, cb, cc = kissing_circles(t345)
    assert (ca.radius, cb.radius, cc.radius) == pytest.approx((2.0, 3.0, 1.0))
    # B and C circles touch at the intouch point on BC.
    touch = Point2(1, 0)
    assert distance(cb.center, touch) == pytest.approx(cb.radius)
    assert distance(cc.center, touch) == pytest.approx(cc.radius)


def test_kissing_tangency_is_intouch(rng):
    for _ in range(50):
        t = random_triangle(rng)
        ca, cb, cc = kissing_circles(t)
        ins, _ = intouch_extouch(t)
        # Pairwise tangency: center gap equals radius sum; touch point is
        # the intouch point of the shared side.
        for (c1, c2, touch) in ((cb, cc, ins[0]), (cc, ca, ins[1]), (ca, cb, ins[2])):
            gap = distance(c1.center, c2.center)
            assert gap == pytest.approx(c1.radius + c2.radius, rel=1e-12)
            on = Point2(
                c1.center.x + (c2.center.x - c1.center.x) * c1.radius / gap,
                c1.center.y + (c2.center.y - c1.center.y) * c1.radius / gap,
            )
            assert distance(on, touch) < 1e-10 * t.scale()


def test_soddy_345(t345):
    cfg = soddy(t345)
    assert cfg.inner.radius == pytest.approx(6 / 23, abs=1e-12)
    assert cfg.regime == "contains"
    assert cfg.half_tangent_sum == pytest.approx(11 / 6)
    assert cfg.outer_circle.radius == pytest.approx(6.0, abs=1e-10)
    assert distance(cfg.outer_circle.center, Point2(4, 3)) < 1e-10
    # Isoperimetric sums |XB|+|XC|+a agree at X175.
    x175 = cfg.outer_circle.center
    sums = [
        distance(x175, t345.b) + distance(x175, t345.c) + t345.side_a,
        distance(x175, t345.c) + distance(x175, t345.a) + t345.side_b,
        distance(x175, t345.a) + distance(x175, t345.b) + t345.side_c,
    ]
    assert max(sums) - min(sums) < 1e-9
    assert sums[0] == pytest.approx(12.0, abs=1e-9)


def test_soddy_centers_345(t345):
    x175, x176 = soddy_centers(t345)
    assert distance(x175, Point2(4, 3)) < 1e-10
    d = (distance(x176, t345.a), distance(x176, t345.b), distance(x176, t345.c))
    assert d == pytest.approx((52 / 23, 75 / 23, 29 / 23), abs=1e-10)


def test_equal_detour_at_x176(rng):
    for _ in range(100):
        t = random_triangle(rng)
        _, x176 = soddy_centers(t)
        a, b, c = t.sides()
        det = [
            distance(x176, t.b) + distance(x176, t.c) - a,
            distance(x176, t.c) + distance(x176, t.a) - b,
            distance(x176, t.a) + distance(x176, t.b) - c,
        ]
        assert max(det) - min(det) < 1e-8 * (a + b + c)


def test_inner_soddy_tangent_to_kissing(rng):
    for _ in range(500):
        t = random_triangle(rng)
        cfg = soddy(t)
        for kc in cfg.kissing:
            gap = distance(cfg.inner.center, kc.center)
            assert abs(gap - (cfg.inner.radius + kc.radius)) < 1e-8 * t.scale()


def test_regime_sign_matches_descartes(rng):
    for _ in range(1000):
        t = random_triangle(rng)
        k = [1.0 / c.radius for c in kissing_circles(t)]
        k_out = sum(k) - 2.0 * math.sqrt(k[0] * k[1] + k[1] * k[2] + k[2] * k[0])
        hts = half_tangent_sum(t)
        if abs(k_out) < 1e-9 * sum(k):
            continue
        assert (k_out < 0.0) == (hts < 2.0)


def test_soddy_external_regime():
    # Flat triangle: half-tangent sum over 2, outer circle externally tangent.
    t = Triangle(Point2(0, 0), Point2(1, 0), Point2(0.5, 0.05))
    cfg = soddy(t)
    assert cfg.half_tangent_sum > 2.0
    assert cfg.regime == "external"
    for kc in cfg.kissing:
        gap = distance(cfg.outer_circle.center, kc.center)
        assert abs(gap - (cfg.outer_circle.radius + kc.radius)) < 1e-8


def test_cevian_anticevian(t_generic, rng):
    centroid = BaryCoords(1, 1, 1)
    med = cevian_triangle(t_generic, centroid)
    from triconic.geom import midpoint

    assert distance(med.a, midpoint(t_generic.b, t_generic.c)) < 1e-12
    q = BaryCoords(0.4, 1.2, 0.7)
    anti = anticevian_triangle(t_generic, q)
    # The reference is the q-cevian of its q-anticevian.
    q_cart = bary_to_cartesian(t_generic, q)
    from triconic.geom import cartesian_to_bary

    q_in_anti = cartesian_to_bary(anti, q_cart)
    back = cevian_triangle(anti, q_in_anti)
    for v, w in zip(back.vertices(), t_generic.vertices()):
        assert distance(v, w) < 1e-9


def test_reflection_triangle(t345):
    refl = reflection_triangle(t345, Point2(1, 1))
    assert distance(refl.a, Point2(1, -1)) < 1e-12  # over BC (y = 0)
    assert distance(refl.b, Point2(-1, 1)) < 1e-12  # over CA (x = 0)
    assert distance(refl.c, Point2(2.2, 2.6)) < 1e-12  # over AB (3x+4y=12)


def test_classic_center_constructed_ids(t456):
    from triconic.conic import center as conic_center
    from triconic.triads import build_triad, six_point_conic

    assert distance(classic_center(t456, "X1"), incircle(t456).center) < 1e-12
    x478 = classic_center(t456, "X478")
    rep = six_point_conic(build_triad(t456, "v_ellipse"))
    assert distance(x478, conic_center(rep.conic)) < 1e-12
    x5452 = classic_center(t456, "X5452")
    reph = six_point_conic(build_triad(t456, "v_hyperbola"))
    assert distance(x5452, conic_center(reph.conic)) < 1e-12
    x175, x176 = soddy_centers(t456)
    assert distance(classic_center(t456, "X175"), x175) < 1e-12
    assert distance(classic_center(t456, "X176"), x176) < 1e-12
