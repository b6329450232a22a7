import math

import numpy as np
import pytest

from triconic.centers import circumcircle, classic_center, incircle
from triconic.conic import ConicClass, classify, residual
from triconic.errors import RadicalDomainError
from triconic.geom import BaryCoords, Point2, Triangle, bary_to_cartesian, distance
from triconic.loci import (
    covertex_conconic_V,
    covertex_conic_check,
    covertex_condition_equilateral_P,
    covertex_locus_V,
    equilateral_ostar_locus_check,
    eval_implicit,
    find_phyp_circle_points,
    find_pstar,
    find_pstar_candidates,
    halftangent_sextic,
    ostar_arc_ellipses,
    parabola_deg8_V,
    phyp_circle_functional,
    pstar_circle_functional,
    region_map,
    sample_locus_ostar,
    sample_locus_x478,
    trace_zero_set,
    x478_center_for_theta,
    x478_quartic,
    x55_conjecture_check,
    _deltas,
    _lambdas,
)
from triconic.triads import build_triad, six_point_conic, triad_vertices
from triconic.verify import random_triangle


def test_x478_quartic_values():
    assert x478_quartic(0.5, 1.0) == pytest.approx(0.0, abs=1e-14)
    assert x478_quartic(0.0, 0.0) == 0.0
    assert eval_implicit("x478_quartic", {"x": 0.5, "y": 1.0}) == pytest.approx(0.0, abs=1e-14)


def test_halftangent_sextic_value():
    assert halftangent_sextic(0.0, 1.0) == 25.0
    # Sign change bracketing the quintic root on x = 0.
    assert halftangent_sextic(0.0, 0.7) < 0.0
    assert halftangent_sextic(0.0, 0.9) > 0.0


def test_parabola_deg8_equilateral():
    assert parabola_deg8_V(1.0, 1.0, 1.0) == -3.0


def test_pstar_functional_equilateral_center(equilateral):
    c = Point2(0.0, math.sqrt(3) / 6)
    assert pstar_circle_functional(*equilateral.sides(), *_deltas(equilateral, c)) == pytest.approx(
        0.0, abs=1e-15
    )


def test_covertex_condition_side_sqrt3_centroid():
    # Equilateral with circumradius 1: the centroid is the isolated zero.
    verts = [
        Point2(math.cos(a), math.sin(a))
        for a in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3)
    ]
    t = Triangle(*verts)
    assert covertex_condition_equilateral_P(*_deltas(t, Point2(0.0, 0.0))) == pytest.approx(
        0.0, abs=1e-12
    )


def test_sample_locus_x478():
    samples = sample_locus_x478(120)
    assert len(samples) == 120
    assert max(s.implicit_residual for s in samples) <= 1e-8
    # The locus arc sits above y = 1 (open side condition).
    assert min(s.center.y for s in samples) > 1.0
    # Symmetric parameterization: theta and pi - theta give mirrored centers.
    c1 = x478_center_for_theta(0.4)[1]
    c2 = x478_center_for_theta(math.pi - 0.4)[1]
    assert c1.x == pytest.approx(-c2.x, abs=1e-12)
    assert c1.y == pytest.approx(c2.y, abs=1e-12)


def test_x478_endpoint_limits():
    _, cen = x478_center_for_theta(1e-5)
    assert distance(cen, Point2(0.5, 1.0)) <= 1e-4
    _, cen = x478_center_for_theta(math.pi - 1e-5)
    assert distance(cen, Point2(-0.5, 1.0)) <= 1e-4


def test_isosceles_right_center_on_axis():
    _, cen = x478_center_for_theta(math.pi / 2)
    assert abs(cen.x) < 1e-12
    # Quartic on the axis: 2y^2 (2y^2 - 4y + 1) = 0 with the arc root above 1.
    assert cen.y == pytest.approx(1.0 + 1.0 / math.sqrt(2.0), abs=1e-12)


def test_ostar_locus(t_generic):
    samples, arcs = sample_locus_ostar(t_generic, 120)
    assert len(samples) >= 100
    assert max(s.implicit_residual for s in samples) <= 1e-8
    from triconic.geom import midpoint

    mids = (
        midpoint(t_generic.b, t_generic.c),
        midpoint(t_generic.c, t_generic.a),
        midpoint(t_generic.a, t_generic.b),
    )
    for con in arcs.values():
        for m in mids:
            assert residual(con, m) <= 1e-8


def test_ostar_endpoint_vertex_limit(t_generic):
    # As P approaches vertex A along the (c) arc side, O* approaches the
    # V-ellipse vertex that ends that arc.
    t = t_generic
    a, b, c = t.sides()
    L = a + b + c
    cc = circumcircle(t)
    ang_a = math.atan2(t.a.y - cc.center.y, t.a.x - cc.center.x)
    arcs = ostar_arc_ellipses(t)
    endpoint = bary_to_cartesian(t, BaryCoords(0.0, a - b - c, L))  # ends L_c
    best = math.inf
    for eps in (0.03, 0.01, 0.003):
        for sgn in (1.0, -1.0):
            p = cc.point_at(ang_a + sgn * eps)
            try:
                rep = six_point_conic(build_triad(t, "p_ellipse", p))
            except Exception:
                continue
            if rep.center is None:
                continue
            best = min(best, distance(rep.center, endpoint))
    assert best < 0.05 * t.scale()


def test_equilateral_ostar_corollary():
    rep = equilateral_ostar_locus_check()
    assert rep.semi_axes[0] == pytest.approx(math.sqrt(3) / 2, abs=1e-8)
    assert rep.semi_axes[1] == pytest.approx(math.sqrt(3) / 6, abs=1e-8)
    assert max(rep.center_offsets) <= 1e-8
    assert max(rep.midpoint_residuals) <= 1e-8
    assert rep.endpoint_set_error <= 1e-8
    assert max(rep.tangency_discriminants) <= 1e-8
    assert rep.top_vertex_error <= 1e-8
    assert rep.area_ratio == pytest.approx(3.0, abs=1e-8)


def test_find_pstar_equilateral(equilateral):
    p = find_pstar(equilateral)
    assert distance(p, Point2(0.0, math.sqrt(3) / 6)) < 1e-7


def test_find_pstar_unique_and_circular(t_generic):
    # For this well-conditioned triangle the validated zero is unique; the
    # candidates cluster to a single point across all converged starts.
    hits = find_pstar_candidates(t_generic)
    assert len(hits) == 1
    p = Point2(*hits[0][0])
    rep = six_point_conic(build_triad(t_generic, "p_ellipse", p))
    assert rep.conic_class is ConicClass.CIRCLE
    cc = circumcircle(t_generic)
    assert distance(rep.center, cc.center) <= 1e-6 * cc.radius


def test_anticevian_needle(t_generic):
    from triconic.centers import anticevian_triangle, center_bary

    tac = anticevian_triangle(t_generic, center_bary(t_generic, "X3"))
    x3 = classic_center(t_generic, "X3")
    fval = pstar_circle_functional(*tac.sides(), *_deltas(tac, x3))
    assert fval <= 1e-12
    rep = six_point_conic(build_triad(tac, "p_ellipse", x3))
    cc = circumcircle(tac)
    assert rep.conic_class is ConicClass.CIRCLE
    assert distance(rep.center, cc.center) <= 1e-8 * cc.radius
    # Center on the X4-X6 line of the reference.
    from triconic.geom import line_through

    ln = line_through(
        classic_center(t_generic, "X4"), classic_center(t_generic, "X6")
    )
    assert ln.distance_to(rep.center) <= 1e-8 * t_generic.scale()


def test_find_phyp_circle_points(t_generic):
    p1, p2 = find_phyp_circle_points(t_generic)
    s = t_generic.scale()
    assert distance(p1, p2) > 1e-3 * s
    cc = circumcircle(t_generic)
    for p in (p1, p2):
        assert phyp_circle_functional(
            *t_generic.sides(), *_lambdas(t_generic, p)
        ) <= 1e-12
        rep = six_point_conic(build_triad(t_generic, "p_hyperbola", p))
        assert rep.conic_class is ConicClass.CIRCLE
        assert distance(rep.center, cc.center) <= 1e-6 * cc.radius
    # The pair are common intersections of each other's triads.
    from triconic.triads import second_common_point

    q = second_common_point(build_triad(t_generic, "p_hyperbola", p1))
    assert distance(q, p2) <= 1e-7 * s


def test_region_map_circumcircle_boundary(t_generic):
    cc = circumcircle(t_generic)
    n = 41
    grid = region_map(
        t_generic,
        "p_ellipse_over_P",
        (n, n),
        (
            cc.center.x - 1.5 * cc.radius,
            cc.center.x + 1.5 * cc.radius,
            cc.center.y - 1.5 * cc.radius,
            cc.center.y + 1.5 * cc.radius,
        ),
    )
    # Along the middle row, the class flips from hyperbola-side to
    # ellipse-side within one cell of the analytic circle crossing.
    j = n // 2
    y = grid.cell_center(0, j)[1]
    half_chord = math.sqrt(max(cc.radius**2 - (y - cc.center.y) ** 2, 0.0))
    x_cross = cc.center.x + half_chord
    import triconic.kernels as kernels

    flips = []
    prev = None
    for i in range(n):
        x, _ = grid.cell_center(i, j)
        st, _, _, detn, _ = kernels.six_point(
            t_generic.a.x, t_generic.a.y, t_generic.b.x, t_generic.b.y,
            t_generic.c.x, t_generic.c.y, kernels.KIND_P_ELLIPSE, x, y,
        )
        if st:
            prev = None
            continue
        sgn = detn > 0
        if prev is not None and sgn != prev:
            flips.append(x)
        prev = sgn
    cell_w = (grid.bbox[1] - grid.bbox[0]) / n
    assert any(abs(f - x_cross) <= 1.5 * cell_w for f in flips)


def test_region_map_v_ellipse_deg8_boundary(t_generic):
    # Boundary cells between ellipse and hyperbola regions straddle zero
    # crossings of the degree-8 parabola condition.
    n = 31
    grid = region_map(t_generic, "v_ellipse_over_C", (n, n))
    found = 0
    for j in range(n):
        for i in range(n - 1):
            c1 = grid.cells[j][i]
            c2 = grid.cells[j][i + 1]
            kinds = {c1, c2}
            if not ({"ellipse", "circle"} & kinds and {"hyperbola", "rectangular_hyperbola"} & kinds):
                continue
            x1, y = grid.cell_center(i, j)
            x2, _ = grid.cell_center(i + 1, j)
            try:
                v1 = parabola_deg8_V(*Triangle(t_generic.a, t_generic.b, Point2(x1, y)).sides())
                v2 = parabola_deg8_V(*Triangle(t_generic.a, t_generic.b, Point2(x2, y)).sides())
            except Exception:
                continue
            assert (v1 < 0) != (v2 < 0)
            found += 1
    assert found > 0


def test_region_map_sideline_extension_cells(t_generic):
    # Cells whose centers land on a sideline extension fail construction and
    # are marked degenerate.
    from triconic.loci import RegionGrid

    b, c = t_generic.b, t_generic.c
    u = 1.3
    p = Point2(b.x + u * (c.x - b.x), b.y + u * (c.y - b.y))
    eps = 1e-9
    grid = region_map(
        t_generic, "p_hyperbola_over_P", (2, 2), (p.x - eps, p.x + eps, p.y - eps, p.y + eps)
    )
    # All four tiny cells hug the extension; at least the nearest ones fail.
    assert "degenerate" in {cls for row in grid.cells for cls in row}


def test_trace_zero_set_circle():
    polys = trace_zero_set(lambda x, y: x * x + y * y - 1.0, (-1.3, 1.3, -1.3, 1.3), 64)
    pts = [p for poly in polys for p in poly]
    assert len(pts) > 100
    for p in pts:
        assert abs(math.hypot(p.x, p.y) - 1.0) <= 1e-8
    # Chained into a closed loop: one polyline with matching ends.
    longest = max(polys, key=len)
    assert distance(longest[0], longest[-1]) < 0.1


def test_trace_zero_set_quartic():
    polys = trace_zero_set(
        lambda x, y: x478_quartic(x, y), (-1.2, 1.2, -1.2, 1.2), 96
    )
    pts = [p for poly in polys for p in poly]
    for p in pts:
        assert abs(x478_quartic(p.x, p.y)) <= 1e-9
    for target in (Point2(0.5, 1.0), Point2(-0.5, 1.0), Point2(0.0, 0.0)):
        assert min(distance(p, target) for p in pts) < 0.05
    # x -> -x symmetry of the traced set.
    for p in pts[::7]:
        assert min(abs(q.x + p.x) + abs(q.y - p.y) for q in pts) < 0.05


def test_trace_zero_set_sextic_axis_crossing():
    polys = trace_zero_set(
        lambda x, y: halftangent_sextic(x, y), (-1.0, 1.0, 0.3, 1.3), 96
    )
    pts = [p for poly in polys for p in poly]
    near_axis = [p for p in pts if abs(p.x) < 0.02]
    assert near_axis
    for p in near_axis:
        assert 0.7 < p.y < 0.9  # the single quintic root at y = 3/4


def test_covertex_check_v():
    rep = covertex_conic_check("v_ellipse")
    assert rep.residual6 <= 1e-7
    assert rep.conic_class in (ConicClass.HYPERBOLA, ConicClass.RECTANGULAR_HYPERBOLA)
    # Negative control: off the locus the sixth co-vertex misses the conic.
    val = covertex_conconic_V(rep.driver.x + 0.15, rep.driver.y + 0.1)
    assert abs(val) > 1e-6


def test_covertex_check_p_equilateral():
    rep = covertex_conic_check("p_equilateral")
    assert rep.residual6 <= 1e-7
    assert abs(rep.implicit_value) <= 1e-9
    assert rep.center_on_incircle_error <= 1e-7


def test_x55_conjecture(t_generic, equilateral):
    rep = x55_conjecture_check(t_generic)
    assert rep.circle_spread <= 1e-6 * rep.circumradius
    assert rep.concentricity_error <= 1e-6 * rep.circumradius
    assert rep.x7_match_error <= 1e-7 * rep.circumradius
    rep_eq = x55_conjecture_check(equilateral)
    assert rep_eq.circle_spread <= 1e-9


def test_eval_implicit_unknown():
    with pytest.raises(KeyError):
        eval_implicit("nope", {})


def test_covertex_branch_split_reported():
    rep = covertex_conic_check("v_ellipse")
    assert rep.branch_split is not None
    assert sum(rep.branch_split) == 6
    assert rep.branch_split in ((3, 3), (5, 1))
