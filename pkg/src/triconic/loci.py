"""Implicit condition curves, degenerate-center loci, special points and
conic-type region maps.

Coordinate conventions for the plane curves follow the source constructions:
the quartic center locus uses A=(1/2,0), B=(-1/2,0); the co-vertex locus
and the half-tangent sextic use A=(-1,0), B=(1,0).  The functionals are
evaluated in (sidelengths, focal sums/differences) form, radicals on the
positive branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import kernels
from .centers import (
    circumcircle,
    classic_center,
    excircle_tangency_points,
    incircle,
    reflection_triangle,
)
from .conic import (
    Conic,
    ConicClass,
    center as conic_center,
    classify,
    fit_conic_5pts,
    residual,
    tangency_discriminant,
)
from .errors import (
    DegenerateMember,
    DriverNotOnLocus,
    NotConverged,
    RadicalDomainError,
)
from .geom import (
    BaryCoords,
    LineEq,
    Point2,
    Triangle,
    bary_to_cartesian,
    distance,
    line_intersection,
    line_through,
    midpoint,
    signed_area,
)
from .triads import build_triad, six_point_conic, second_common_point, triad_covertices


# ---------------------------------------------------------------------------
# Implicit curves and functionals
# ---------------------------------------------------------------------------

def _sqrt(v: float) -> float:
    if v < 0.0:
        raise RadicalDomainError(f"negative radical argument {v}")
    return math.sqrt(v)


def x478_quartic(x: float, y: float) -> float:
    """Center locus of the degenerate V-ellipse six-point conic,
    A=(1/2,0), B=(-1/2,0)."""
    r2 = x * x + y * y
    return 4.0 * r2 * r2 - 8.0 * y**3 - x * x + 2.0 * y * y


def parabola_deg8_V(a: float, b: float, c: float) -> float:
    """Degree-8 sidelength condition for the V-ellipse six-point conic to be
    a parabola."""
    return (
        a**8
        + b**8
        + c**8
        - 2.0 * (a**4 * b**4 + a**4 * c**4 + b**4 * c**4)
        + 4.0
        * a
        * b
        * c
        * (
            a**5
            + b**5
            + c**5
            - a**4 * b
            - a * b**4
            - a**4 * c
            - a * c**4
            - b * c**4
            - b**4 * c
            + a**3 * b * c
            + a * b**3 * c
            + a * b * c**3
        )
    )


def covertex_locus_V(x: float, y: float) -> float:
    """Locus of C such that the six V-ellipse co-vertices are conconic,
    A=(-1,0), B=(1,0)."""
    rho1 = _sqrt(x * x + y * y + 2.0 * x + 1.0)
    rho2 = _sqrt(x * x + y * y - 2.0 * x + 1.0)
    x2, y2 = x * x, y * y
    t1 = (
        x2**3
        - (2.0 * y2 + 3.0) * x2**2
        - (3.0 * y2 * y2 - 8.0 * y2 - 3.0) * x2
        + 11.0 * y2 * y2
        - 6.0 * y2
        - 1.0
    )
    t2 = (
        -2.0 * x2**3
        - (22.0 * y2 - 6.0) * x2**2
        - (14.0 * y2 * y2 - 36.0 * y2 + 6.0) * x2
        + 6.0 * y2**3
        + 22.0 * y2 * y2
        - 14.0 * y2
        + 2.0
    )
    t3 = (
        x2**3
        + (3.0 * y2 - 3.0) * x2**2
        + (3.0 * y2 * y2 - 2.0 * y2 + 3.0) * x2
        + y2**3
        - 7.0 * y2 * y2
        - y2
        - 1.0
    )
    t4 = (
        2.0
        * (x2 + y2 - 1.0)
        * (5.0 * x2 * x2 + 2.0 * (y2 - 5.0) * x2 - 3.0 * y2 * y2 - 14.0 * y2 + 5.0)
        * (x2 - 1.0)
    )
    return t1 * rho1 * rho2 + t2 * (rho1 + rho2) + 2.0 * x * t3 * (rho1 - rho2) + t4


def halftangent_sextic(x: float, y: float) -> float:
    """Locus of C with half-tangent sum 2 (outer Soddy circle degenerates to
    a line), A=(-1,0), B=(1,0); the stated component, its mirror is y -> -y."""
    return (
        -4.0 * x**6
        - 4.0 * x**4 * (2.0 * y * y + 2.0 * y + 1.0)
        - 4.0 * x * x * (y**4 + y**3 - 4.0 * y - 5.0)
        + 4.0 * y**5
        + 13.0 * y**4
        + 20.0 * y**3
        + 8.0 * y * y
        - 8.0 * y
        - 12.0
    )


def pstar_circle_functional(a, b, c, da, db, dc) -> float:
    """Sum of three squared brackets; zero iff the P-ellipse six-point conic
    is a circle."""
    f1 = (a * a - da * da) * (c * c - b * b + db * db - dc * dc)
    f2 = (b * b - db * db) * (a * a - c * c + dc * dc - da * da)
    f3 = (c * c - dc * dc) * (b * b - a * a + da * da - db * db)
    return f1 * f1 + f2 * f2 + f3 * f3


def covertex_condition_equilateral_P(da, db, dc) -> float:
    """Co-vertex conconic condition for the equilateral with circumradius 1
    (side sqrt(3))."""
    da2, db2, dc2 = da * da, db * db, dc * dc
    return (
        da2 * db2
        + da2 * dc2
        + db2 * dc2
        - 8.0 * (da2 + db2 + dc2)
        + 48.0
    )


def phyp_circle_functional(a, b, c, la, lb, lc) -> float:
    """Zero iff the P-hyperbola six-point conic is a circle."""
    f1 = (c * c - lc * lc) * (-(a * a) + b * b + la * la - lb * lb)
    f2 = (b * b - lb * lb) * (-(a * a) + c * c + la * la - lc * lc)
    f3 = (a * a - la * la) * (-(b * b) + c * c + lb * lb - lc * lc)
    return f1 * f1 + f2 * f2 + f3 * f3


def phyp_parabola_condition(a, b, c, la, lb, lc) -> float:
    """Zero iff the P-hyperbola six-point conic is a parabola."""
    a2, b2, c2 = a * a, b * b, c * c
    la2, lb2, lc2 = la * la, lb * lb, lc * lc
    mu = (a * b * c) ** 2
    t = (
        (c2 * la2 * lb2) ** 2
        + (b2 * la2 * lc2) ** 2
        + (a2 * lb2 * lc2) ** 2
        + mu
        * (
            mu * (-3.0 + 4.0 * (la2 / a2 + lb2 / b2 + lc2 / c2))
            + 2.0 * la2 * lb2 * lc2 * (6.0 - la2 / a2 - lb2 / b2 - lc2 / c2)
            - 6.0 * (c2 * la2 * lb2 + b2 * la2 * lc2 + a2 * lb2 * lc2)
        )
    )
    return t


@dataclass(frozen=True)
class ImplicitCurve:
    id: str
    evaluate: callable  # (context dict) -> float


def _deltas(t: Triangle, p: Point2):
    return (
        distance(p, t.b) + distance(p, t.c),
        distance(p, t.c) + distance(p, t.a),
        distance(p, t.a) + distance(p, t.b),
    )


def _lambdas(t: Triangle, p: Point2):
    return (
        distance(p, t.b) - distance(p, t.c),
        distance(p, t.c) - distance(p, t.a),
        distance(p, t.a) - distance(p, t.b),
    )


def eval_implicit(curve_id: str, context: dict) -> float:
    """Evaluate one of the named implicit conditions.

    Plane curves take {"x", "y"}; the functionals take either sidelengths
    plus deltas/lambdas, or {"t": Triangle, "p": Point2}.
    """
    if curve_id == "x478_quartic":
        return x478_quartic(context["x"], context["y"])
    if curve_id == "covertex_locus_V":
        return covertex_locus_V(context["x"], context["y"])
    if curve_id == "halftangent_sextic":
        return halftangent_sextic(context["x"], context["y"])
    if curve_id == "parabola_deg8_V":
        if "t" in context:
            a, b, c = context["t"].sides()
        else:
            a, b, c = context["a"], context["b"], context["c"]
        return parabola_deg8_V(a, b, c)
    if curve_id == "pstar_circle_functional":
        if "t" in context:
            t, p = context["t"], context["p"]
            return pstar_circle_functional(*t.sides(), *_deltas(t, p))
        return pstar_circle_functional(
            context["a"], context["b"], context["c"],
            context["da"], context["db"], context["dc"],
        )
    if curve_id == "covertex_condition_equilateral_P":
        if "t" in context:
            t, p = context["t"], context["p"]
            return covertex_condition_equilateral_P(*_deltas(t, p))
        return covertex_condition_equilateral_P(
            context["da"], context["db"], context["dc"]
        )
    if curve_id == "phyp_circle_functional":
        if "t" in context:
            t, p = context["t"], context["p"]
            return phyp_circle_functional(*t.sides(), *_lambdas(t, p))
        return phyp_circle_functional(
            context["a"], context["b"], context["c"],
            context["la"], context["lb"], context["lc"],
        )
    if curve_id == "phyp_parabola_condition":
        if "t" in context:
            t, p = context["t"], context["p"]
            return phyp_parabola_condition(*t.sides(), *_lambdas(t, p))
        return phyp_parabola_condition(
            context["a"], context["b"], context["c"],
            context["la"], context["lb"], context["lc"],
        )
    raise KeyError(f"unknown implicit curve {curve_id!r}")


CURVE_IDS = (
    "x478_quartic",
    "parabola_deg8_V",
    "covertex_locus_V",
    "halftangent_sextic",
    "pstar_circle_functional",
    "covertex_condition_equilateral_P",
    "phyp_circle_functional",
    "phyp_parabola_condition",
)


def implicit_curve(curve_id: str) -> ImplicitCurve:
    if curve_id not in CURVE_IDS:
        raise KeyError(f"unknown implicit curve {curve_id!r}")
    return ImplicitCurve(curve_id, lambda ctx, _id=curve_id: eval_implicit(_id, ctx))


# ---------------------------------------------------------------------------
# Degenerate-center loci
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocusSample:
    parameter: float
    driver: Point2
    center: Point2
    implicit_residual: float


def x478_center_for_theta(theta: float) -> tuple[Point2, Point2]:
    """(C, degenerate-conic center) for C = (cos, sin)*(1/2) on the
    semicircle over AB, A=(1/2,0), B=(-1/2,0).

    The six tangency points fall on two lines; the center is their
    intersection, which stays well conditioned near the sweep endpoints.
    """
    A = Point2(0.5, 0.0)
    B = Point2(-0.5, 0.0)
    C = Point2(0.5 * math.cos(theta), 0.5 * math.sin(theta))
    t = Triangle(A, B, C)
    A1, A2, B1, B2, C1, C2 = excircle_tangency_points(t)
    # Collinear triples of the degenerate six-point conic (right angle at C):
    # {A1, B1, C2} and {A2, B2, C1}; use the farthest pair per triple.
    l1 = _line_far_pair((A1, B1, C2))
    l2 = _line_far_pair((A2, B2, C1))
    return C, line_intersection(l1, l2)


def _line_far_pair(pts) -> LineEq:
    best = None
    dmax = -1.0
    for i in range(3):
        for j in range(i + 1, 3):
            d = distance(pts[i], pts[j])
            if d > dmax:
                dmax = d
                best = (pts[i], pts[j])
    return line_through(*best)


def sample_locus_x478(n: int, eps: float = 0.05) -> list[LocusSample]:
    """Sweep C over the open upper semicircle (minus eps at the ends)."""
    if n < 2:
        raise ValueError("need n >= 2")
    out = []
    for k in range(n):
        theta = eps + (math.pi - 2.0 * eps) * k / (n - 1)
        C, cen = x478_center_for_theta(theta)
        out.append(LocusSample(theta, C, cen, abs(x478_quartic(cen.x, cen.y))))
    return out


_ARC_VERTEX_BARYS = {
    # Arc opposite A (between B and C): locus ellipse endpoints are the
    # "x-heavy" vertices of the b- and c-members; cyclic for the others.
    "a": ((1.0, 0.0, -1.0), (1.0, -1.0, 0.0)),
    "b": ((-1.0, 1.0, 0.0), (0.0, 1.0, -1.0)),
    "c": ((0.0, -1.0, 1.0), (-1.0, 0.0, 1.0)),
}


def ostar_arc_ellipses(t: Triangle) -> dict[str, Conic]:
    """The three locus ellipses, each through the three side midpoints and
    two V-ellipse vertices."""
    a, b, c = t.sides()
    L = a + b + c
    mids = [midpoint(t.b, t.c), midpoint(t.c, t.a), midpoint(t.a, t.b)]
    diff = (a - b - c, b - c - a, c - a - b)
    out = {}
    for arc, (w1, w2) in _ARC_VERTEX_BARYS.items():
        pts = list(mids)
        for w in (w1, w2):
            # V-ellipse vertex: L in the positive slot, the difference of the
            # owning member (the slot left empty) in the negative slot.
            u = [0.0, 0.0, 0.0]
            pos = w.index(1.0)
            neg = w.index(-1.0)
            u[pos] = L
            u[neg] = diff[3 - pos - neg]
            pts.append(bary_to_cartesian(t, BaryCoords(*u)))
        out[arc] = fit_conic_5pts(pts)
    return out


def _arc_of_point(t: Triangle, p: Point2) -> str:
    """Which circumcircle third contains p (by angle between vertex angles)."""
    cc = circumcircle(t)
    ang = {
        "A": math.atan2(t.a.y - cc.center.y, t.a.x - cc.center.x),
        "B": math.atan2(t.b.y - cc.center.y, t.b.x - cc.center.x),
        "C": math.atan2(t.c.y - cc.center.y, t.c.x - cc.center.x),
    }
    ap = math.atan2(p.y - cc.center.y, p.x - cc.center.x)

    def between(lo, hi, x):
        width = (hi - lo) % (2.0 * math.pi)
        return (x - lo) % (2.0 * math.pi) <= width

    # Arc between B and C not containing A is the "a" arc, etc.
    for arc, (u, v, other) in (
        ("a", ("B", "C", "A")),
        ("b", ("C", "A", "B")),
        ("c", ("A", "B", "C")),
    ):
        lo, hi = ang[u], ang[v]
        if between(lo, hi, ap) != between(lo, hi, ang[other]):
            return arc
    # Numerical tie: nearest vertex decides against its own arc.
    d = {k: abs((ap - v) % (2 * math.pi)) for k, v in ang.items()}
    nearest = min(d, key=d.get)
    return {"A": "b", "B": "c", "C": "a"}[nearest]


def sample_locus_ostar(
    t: Triangle, n: int, eps: float = 0.03
) -> tuple[list[LocusSample], dict[str, Conic]]:
    """Sweep P over the circumcircle; report each degenerate center O*
    against the locus ellipse of P's arc."""
    cc = circumcircle(t)
    arcs = ostar_arc_ellipses(t)
    vertex_angles = sorted(
        math.atan2(v.y - cc.center.y, v.x - cc.center.x) % (2 * math.pi)
        for v in t.vertices()
    )
    samples = []
    for k in range(n):
        theta = 2.0 * math.pi * k / n
        if any(
            min(abs(theta - va), 2 * math.pi - abs(theta - va)) < eps
            for va in vertex_angles
        ):
            continue
        p = cc.point_at(theta)
        rep = six_point_conic(build_triad(t, "p_ellipse", p))
        if rep.center is None:
            continue
        arc = _arc_of_point(t, p)
        res = residual(arcs[arc], rep.center)
        samples.append(LocusSample(theta, p, rep.center, res))
    return samples, arcs


@dataclass(frozen=True)
class EquilateralOstarReport:
    semi_axes: tuple[float, float]
    center_offsets: tuple[float, float, float]
    midpoint_residuals: tuple[float, ...]
    endpoint_set_error: float
    tangency_discriminants: tuple[float, float]
    top_vertex_error: float
    area_ratio: float


def equilateral_ostar_locus_check() -> EquilateralOstarReport:
    """Side-1 equilateral: locus ellipses centered on the vertices with
    semi-axes sqrt(3)/2 and sqrt(3)/6, plus the tangent-line construction."""
    A = Point2(-0.5, 0.0)
    B = Point2(0.5, 0.0)
    C = Point2(0.0, math.sqrt(3.0) / 2.0)
    t = Triangle(A, B, C)
    arcs = ostar_arc_ellipses(t)
    # Semi-axes and center from the quadratic form of each locus ellipse.
    axes = []
    offsets = []
    for arc, vertex in (("a", A), ("b", B), ("c", C)):
        con = arcs[arc]
        cen = conic_center(con)
        offsets.append(distance(cen, vertex))
        m = con.m
        Q = np.array([[m[0, 0], m[0, 1]], [m[0, 1], m[1, 1]]])
        vh = np.array([cen.x, cen.y, 1.0])
        # Centered form: (p-cen)^T Q (p-cen) = -f(cen)  ->  semi-axes sqrt(k/eig).
        k = -float(vh @ m @ vh)
        eig = np.linalg.eigvalsh(Q)
        semi = sorted((math.sqrt(k / e) for e in eig), reverse=True)
        axes.append(tuple(semi))
    mid_res = tuple(
        residual(arcs[arc], midpoint(u, v))
        for arc in ("a", "b", "c")
        for (u, v) in ((t.b, t.c), (t.c, t.a), (t.a, t.b))
    )
    # Arc "c" endpoints: reflections of the midpoints of AC and BC about C.
    c_a = Point2(2 * C.x - (B.x + C.x) / 2, 2 * C.y - (B.y + C.y) / 2)
    c_b = Point2(2 * C.x - (A.x + C.x) / 2, 2 * C.y - (A.y + C.y) / 2)
    end_err = max(residual(arcs["c"], c_a), residual(arcs["c"], c_b))
    la = line_through(A, c_a)
    lb = line_through(B, c_b)
    disc = (
        abs(tangency_discriminant(arcs["c"], la)),
        abs(tangency_discriminant(arcs["c"], lb)),
    )
    c_ab = line_intersection(la, lb)
    top = midpoint(C, c_ab)
    top_err = residual(arcs["c"], top)
    area_ratio = abs(signed_area(A, c_ab, B)) / t.area
    return EquilateralOstarReport(
        semi_axes=axes[2],
        center_offsets=tuple(offsets),
        midpoint_residuals=mid_res,
        endpoint_set_error=end_err,
        tangency_discriminants=disc,
        top_vertex_error=top_err,
        area_ratio=area_ratio,
    )


# ---------------------------------------------------------------------------
# Special points by derivative-free minimization
# ---------------------------------------------------------------------------

def _coordinate_descent(f, p, scale, rounds=60):
    x, y = p
    fx = f((x, y))
    h = scale * 1e-4
    while h > 1e-15 * scale and rounds > 0:
        rounds -= 1
        improved = False
        for dx, dy in ((h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)):
            cand = (x + dx, y + dy)
            fc = f(cand)
            if fc < fx:
                x, y = cand
                fx = fc
                improved = True
        if not improved:
            h /= 2.0
    return (x, y), fx


def _bracket_curve_starts(t: Triangle, kind: str, span: float = 3.0, n: int = 72):
    """Start points near intersections of the two independent bracket curves
    of a circle functional (their common zeros are the functional's zeros).

    kind "delta" uses the focal-sum brackets, "lambda" the focal-difference
    ones; the third bracket is dependent (the three sum to zero).
    """
    a, b, c = t.sides()
    if kind == "delta":
        def g1(x, y):
            da, db, dc = _deltas(t, Point2(x, y))
            return c * c - b * b + db * db - dc * dc

        def g2(x, y):
            da, db, dc = _deltas(t, Point2(x, y))
            return a * a - c * c + dc * dc - da * da
    else:
        def g1(x, y):
            la, lb, lc = _lambdas(t, Point2(x, y))
            return -a * a + b * b + la * la - lb * lb

        def g2(x, y):
            la, lb, lc = _lambdas(t, Point2(x, y))
            return -a * a + c * c + la * la - lc * lc

    cen = Point2((t.a.x + t.b.x + t.c.x) / 3.0, (t.a.y + t.b.y + t.c.y) / 3.0)
    s = t.scale()
    bbox = (cen.x - span * s, cen.x + span * s, cen.y - span * s, cen.y + span * s)
    pts1 = [p for poly in trace_zero_set(g1, bbox, n) for p in poly]
    pts2 = [p for poly in trace_zero_set(g2, bbox, n) for p in poly]
    if not pts1 or not pts2:
        return []
    arr1 = np.array([(p.x, p.y) for p in pts1])
    arr2 = np.array([(p.x, p.y) for p in pts2])
    d2 = (
        (arr1[:, None, 0] - arr2[None, :, 0]) ** 2
        + (arr1[:, None, 1] - arr2[None, :, 1]) ** 2
    )
    order = np.argsort(d2, axis=None)
    starts = []
    for flat in order[: 40 * 8]:
        i, j = divmod(int(flat), arr2.shape[0])
        x = (arr1[i, 0] + arr2[j, 0]) / 2.0
        y = (arr1[i, 1] + arr2[j, 1]) / 2.0
        if any(math.hypot(x - sx, y - sy) < 0.15 * s for sx, sy in starts):
            continue
        starts.append((x, y))
        if len(starts) >= 8:
            break
    return starts


def _multi_start_minimize(f, starts, scale, target, maxiter=200):
    hits = []
    best = (None, math.inf)
    for s in starts:
        res = optimize.minimize(
            f,
            np.array(s),
            method="Nelder-Mead",
            options={"maxiter": maxiter, "xatol": 1e-13 * scale, "fatol": 0.0},
        )
        (x, y), val = _coordinate_descent(f, (res.x[0], res.x[1]), scale)
        if val < best[1]:
            best = ((x, y), val)
        if val <= target:
            hits.append(((x, y), val))
    return hits, best


def find_pstar(t: Triangle) -> Point2:
    """The principal point whose P-ellipse six-point conic is a circle
    concentric with the circumcircle.

    The circle functional can vanish at additional genuine points very
    close to a vertex (verified counterexamples to strict uniqueness, which
    is an open question); when several validated zeros exist the one with
    the largest clearance from the vertices is returned, matching the
    central solution of the level-curve picture.
    """
    hits = find_pstar_candidates(t)
    if not hits:
        raise NotConverged("pstar functional did not reach its target", None, None)
    return Point2(*hits[0][0])


def _is_circle_at(t: Triangle, p: Point2, kind: str, rel_tol: float = 1e-4) -> bool:
    """Does the six-point conic of the (t, p) triad come out as a circle
    concentric with the circumcircle?"""
    try:
        rep = six_point_conic(build_triad(t, kind, p))
    except Exception:
        return False
    if rep.conic_class is not ConicClass.CIRCLE or rep.center is None:
        return False
    cc = circumcircle(t)
    return distance(rep.center, cc.center) <= rel_tol * cc.radius


def find_pstar_candidates(t: Triangle):
    """Converged zeros of the circle functional, validated as actual circle
    drivers.

    The functional also vanishes at the triangle vertices (two bracket
    factors collapse there); candidates are therefore validated by the
    circle postcondition rather than filtered by distance alone, since the
    genuine zero can sit close to a vertex for thin triangles.
    """
    s = t.scale()
    target = 1e-16 * s**8

    def f(q):
        p = Point2(q[0], q[1])
        return pstar_circle_functional(*t.sides(), *_deltas(t, p))

    cc = circumcircle(t)
    centroid = Point2(
        (t.a.x + t.b.x + t.c.x) / 3.0, (t.a.y + t.b.y + t.c.y) / 3.0
    )
    inc = incircle(t).center
    starts = [centroid.as_tuple(), inc.as_tuple(), cc.center.as_tuple()]
    for k in range(6):
        ang = math.pi * k / 3.0
        starts.append(
            (
                centroid.x + 0.45 * cc.radius * math.cos(ang),
                centroid.y + 0.45 * cc.radius * math.sin(ang),
            )
        )
    # Grid seeds catch zeros hiding near a vertex (thin triangles), and the
    # bracket-curve intersections seed the exact zero geometry.
    grid_vals = []
    for i in range(13):
        for j in range(13):
            x = cc.center.x + cc.radius * 1.4 * (i / 6.0 - 1.0)
            y = cc.center.y + cc.radius * 1.4 * (j / 6.0 - 1.0)
            if min(distance(Point2(x, y), v) for v in t.vertices()) < 1e-3 * s:
                continue
            grid_vals.append(((x, y), f((x, y))))
    grid_vals.sort(key=lambda g: g[1])
    starts.extend(g[0] for g in grid_vals[:8])
    starts.extend(_bracket_curve_starts(t, "delta"))
    hits, best = _multi_start_minimize(f, starts, s, target)
    hits = [h for h in hits if _is_circle_at(t, Point2(*h[0]), "p_ellipse")]
    if not hits:
        raise NotConverged(
            "pstar functional did not reach its target", best[0], best[1]
        )
    # Cluster converged zeros, then order by clearance from the vertices
    # (principal zero first).
    clusters: list[tuple[tuple[float, float], float]] = []
    for xy, val in sorted(hits, key=lambda h: h[1]):
        if not any(
            math.hypot(xy[0] - c[0][0], xy[1] - c[0][1]) <= 1e-7 * s for c in clusters
        ):
            clusters.append((xy, val))
    clusters.sort(
        key=lambda h: -min(distance(Point2(*h[0]), v) for v in t.vertices())
    )
    return clusters


def find_phyp_circle_points(t: Triangle) -> tuple[Point2, Point2]:
    """The pair of points whose P-hyperbola six-point conic is a circle.

    The functional also vanishes trivially at the triangle vertices; those
    are excluded by a guard radius.
    """
    s = t.scale()
    target = 1e-16 * s**8

    def f(q):
        p = Point2(q[0], q[1])
        return phyp_circle_functional(*t.sides(), *_lambdas(t, p))

    cc = circumcircle(t)
    cen = Point2((t.a.x + t.b.x + t.c.x) / 3.0, (t.a.y + t.b.y + t.c.y) / 3.0)
    span = max(cc.radius * 1.7, 2.2 * s)
    grid_vals = []
    for i in range(13):
        for j in range(13):
            x = cen.x + span * (i / 6.0 - 1.0)
            y = cen.y + span * (j / 6.0 - 1.0)
            if min(distance(Point2(x, y), v) for v in t.vertices()) < 1e-3 * s:
                continue
            grid_vals.append(((x, y), f((x, y))))
    grid_vals.sort(key=lambda g: g[1])
    starts = [g[0] for g in grid_vals[:16]]
    starts.extend(_bracket_curve_starts(t, "lambda"))
    hits, best = _multi_start_minimize(f, starts, s, target)
    hits = [h for h in hits if _is_circle_at(t, Point2(*h[0]), "p_hyperbola")]
    if not hits:
        raise NotConverged("phyp circle functional did not converge", best[0], best[1])
    clusters: list[tuple[tuple[float, float], float]] = []
    for (xy, val) in sorted(hits, key=lambda h: h[1]):
        if not any(math.hypot(xy[0] - c[0][0], xy[1] - c[0][1]) <= 1e-6 * s for c in clusters):
            clusters.append((xy, val))
    if len(clusters) == 1:
        # The pair are common intersections of each other's triads: recover
        # the partner as the second common point and polish it.
        p1 = Point2(*clusters[0][0])
        q = second_common_point(build_triad(t, "p_hyperbola", p1))
        (xy, val) = _coordinate_descent(f, q.as_tuple(), s)
        if val > target:
            raise NotConverged("second circle point did not converge", xy, val)
        clusters.append((xy, val))
    pts = sorted((Point2(*c[0]) for c in clusters[:2]), key=lambda p: (p.x, p.y))
    return (pts[0], pts[1])


# ---------------------------------------------------------------------------
# Region maps and zero-set tracing
# ---------------------------------------------------------------------------

REGION_KINDS = ("v_ellipse_over_C", "p_ellipse_over_P", "p_hyperbola_over_P")


@dataclass(frozen=True)
class RegionGrid:
    bbox: tuple[float, float, float, float]  # xmin, xmax, ymin, ymax
    nx: int
    ny: int
    cells: tuple[tuple[str, ...], ...]  # row-major, cells[j][i], j indexes y

    def cell_center(self, i: int, j: int) -> tuple[float, float]:
        xmin, xmax, ymin, ymax = self.bbox
        return (
            xmin + (i + 0.5) * (xmax - xmin) / self.nx,
            ymin + (j + 0.5) * (ymax - ymin) / self.ny,
        )


def region_map(t: Triangle, kind: str, grid: tuple[int, int], bbox=None) -> RegionGrid:
    """Classify the six-point conic per cell, driving C or P over the grid."""
    if kind not in REGION_KINDS:
        raise ValueError(f"unknown region kind {kind!r}")
    nx, ny = grid
    if nx < 2 or ny < 2:
        raise ValueError("grid resolution must be at least 2x2")
    if bbox is None:
        cc = circumcircle(t)
        r = 2.0 * cc.radius
        bbox = (cc.center.x - r, cc.center.x + r, cc.center.y - r, cc.center.y + r)
    xmin, xmax, ymin, ymax = bbox
    ax, ay, bx, by, cx, cy = t.a.x, t.a.y, t.b.x, t.b.y, t.c.x, t.c.y
    kcode = {
        "v_ellipse_over_C": kernels.KIND_V_ELLIPSE,
        "p_ellipse_over_P": kernels.KIND_P_ELLIPSE,
        "p_hyperbola_over_P": kernels.KIND_P_HYPERBOLA,
    }[kind]
    rows = []
    for j in range(ny):
        y = ymin + (j + 0.5) * (ymax - ymin) / ny
        row = []
        for i in range(nx):
            x = xmin + (i + 0.5) * (xmax - xmin) / nx
            if kind == "v_ellipse_over_C":
                status, code, _, _, _ = kernels.six_point(
                    ax, ay, bx, by, x, y, kcode, 0.0, 0.0
                )
            else:
                status, code, _, _, _ = kernels.six_point(
                    ax, ay, bx, by, cx, cy, kcode, x, y
                )
            row.append(kernels.CLASS_NAMES[kernels.CLASS_FAILED if status else code])
        rows.append(tuple(row))
    return RegionGrid(tuple(bbox), nx, ny, tuple(rows))


def trace_zero_set(fn, bbox, n_seeds: int = 64) -> list[list[Point2]]:
    """Marching-squares zero tracing with bisected edge roots.

    fn maps (x, y) to a float; returns chained polylines (point clouds
    degrade gracefully at singular points, no topology guarantees).
    """
    xmin, xmax, ymin, ymax = bbox
    nx = ny = max(8, int(n_seeds))
    xs = [xmin + (xmax - xmin) * i / nx for i in range(nx + 1)]
    ys = [ymin + (ymax - ymin) * j / ny for j in range(ny + 1)]
    vals = [[fn(x, y) for x in xs] for y in ys]

    def edge_root(x1, y1, v1, x2, y2, v2):
        # Bisection along the edge to 1e-10 of its length.
        if v1 == 0.0:
            return (x1, y1)
        if v2 == 0.0:
            return (x2, y2)
        a, b = 0.0, 1.0
        fa = v1
        for _ in range(60):
            m = (a + b) / 2.0
            fm = fn(x1 + (x2 - x1) * m, y1 + (y2 - y1) * m)
            if fm == 0.0 or (b - a) < 1e-10:
                a = b = m
                break
            if (fa < 0.0) != (fm < 0.0):
                b = m
            else:
                a, fa = m, fm
        m = (a + b) / 2.0
        return (x1 + (x2 - x1) * m, y1 + (y2 - y1) * m)

    segments = []
    for j in range(ny):
        for i in range(nx):
            corners = (
                (xs[i], ys[j], vals[j][i]),
                (xs[i + 1], ys[j], vals[j][i + 1]),
                (xs[i + 1], ys[j + 1], vals[j + 1][i + 1]),
                (xs[i], ys[j + 1], vals[j + 1][i]),
            )
            crossings = []
            for k in range(4):
                x1, y1, v1 = corners[k]
                x2, y2, v2 = corners[(k + 1) % 4]
                if v1 == 0.0 and v2 == 0.0:
                    continue
                if (v1 < 0.0) != (v2 < 0.0) or v1 == 0.0 or v2 == 0.0:
                    crossings.append(edge_root(x1, y1, v1, x2, y2, v2))
            if len(crossings) >= 2:
                for k in range(0, len(crossings) - 1, 2):
                    segments.append((crossings[k], crossings[k + 1]))

    # Chain segments into polylines by matching rounded endpoints.
    def key(p):
        return (round(p[0], 9), round(p[1], 9))

    adj: dict[tuple[float, float], list[int]] = {}
    for idx, (p, q) in enumerate(segments):
        adj.setdefault(key(p), []).append(idx)
        adj.setdefault(key(q), []).append(idx)
    used = [False] * len(segments)
    polylines = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        p, q = segments[start]
        chain = [p, q]
        for endpick in (1, 0):
            while True:
                endpt = chain[-1] if endpick == 1 else chain[0]
                nxt = None
                for idx in adj.get(key(endpt), []):
                    if not used[idx]:
                        nxt = idx
                        break
                if nxt is None:
                    break
                used[nxt] = True
                sp, sq = segments[nxt]
                other = sq if key(sp) == key(endpt) else sp
                if endpick == 1:
                    chain.append(other)
                else:
                    chain.insert(0, other)
        polylines.append([Point2(x, y) for (x, y) in chain])
    return polylines


# ---------------------------------------------------------------------------
# Co-vertex conic checks and the reflection-triangle conjecture
# ---------------------------------------------------------------------------

def covertex_conconic_V(x: float, y: float) -> float:
    """Determinant form of the V-ellipse co-vertex conconic condition,
    A=(-1,0), B=(1,0): the 6x6 design determinant of the six co-vertices.

    This is the independent oracle for the co-vertex locus; the displayed
    radical equation (covertex_locus_V) does not reproduce it and is kept
    only as the verbatim evaluation.
    """
    t = Triangle(Point2(-1.0, 0.0), Point2(1.0, 0.0), Point2(x, y))
    cov = triad_covertices(build_triad(t, "v_ellipse"))
    m = np.array([[p.x**2, p.x * p.y, p.y**2, p.x, p.y, 1.0] for p in cov])
    return float(np.linalg.det(m))


def _bisect_along_ray(g, lo: float, hi: float, samples: int = 400) -> float:
    """First root of g on [lo, hi] by scan + bisection."""
    prev_r, prev_v = lo, g(lo)
    for k in range(1, samples + 1):
        r = lo + (hi - lo) * k / samples
        v = g(r)
        if prev_v == 0.0:
            return prev_r
        if (prev_v < 0.0) != (v < 0.0):
            a, b, fa = prev_r, r, prev_v
            for _ in range(80):
                m = (a + b) / 2.0
                fm = g(m)
                if fm == 0.0:
                    return m
                if (fa < 0.0) != (fm < 0.0):
                    b = m
                else:
                    a, fa = m, fm
            return (a + b) / 2.0
        prev_r, prev_v = r, v
    raise DriverNotOnLocus("no sign change along the scan ray")


@dataclass(frozen=True)
class CovertexReport:
    driver: Point2
    implicit_value: float
    residual6: float
    conic_class: ConicClass
    center_on_incircle_error: float | None
    # Observed split of the six co-vertices over the two hyperbola branches
    # (3:3 or 5:1 depending on the locus branch); reporting only.
    branch_split: tuple[int, int] | None = None


def _branch_split(con: Conic, pts) -> tuple[int, int] | None:
    if not classify(con) in (ConicClass.HYPERBOLA, ConicClass.RECTANGULAR_HYPERBOLA):
        return None
    cen = conic_center(con)
    m = con.m
    Q = np.array([[m[0, 0], m[0, 1]], [m[0, 1], m[1, 1]]])
    vh = np.array([cen.x, cen.y, 1.0])
    k = -float(vh @ m @ vh)
    evals, evecs = np.linalg.eigh(Q)
    it = int(np.argmax(k / evals))  # transverse direction
    u = evecs[:, it]
    counts = [0, 0]
    for p in pts:
        s = (p.x - cen.x) * u[0] + (p.y - cen.y) * u[1]
        counts[0 if s >= 0 else 1] += 1
    return (max(counts), min(counts))


def covertex_conic_check(kind: str, ray_angle: float = 1.25) -> CovertexReport:
    """Locate a driver point on the co-vertex conconic locus and verify the
    six co-vertices lie on one conic.

    kind "v_ellipse": C on the locus, A=(-1,0), B=(1,0); the driver is
    located on the determinant condition (the displayed radical equation
    disagrees with it, see covertex_conconic_V) and the report carries the
    verbatim implicit's value at the driver for reference.
    kind "p_equilateral": P on the equilateral condition (circumradius 1);
    additionally checks that the co-vertex conic center lies on the incircle.
    """
    if kind == "v_ellipse":
        A, B = Point2(-1.0, 0.0), Point2(1.0, 0.0)
        dx, dy = math.cos(ray_angle), math.sin(ray_angle)
        g = lambda r: covertex_conconic_V(r * dx, r * dy)
        r = _bisect_along_ray(g, 0.35, 3.0)
        C = Point2(r * dx, r * dy)
        t = Triangle(A, B, C)
        tr = build_triad(t, "v_ellipse")
        cov = triad_covertices(tr)
        con = fit_conic_5pts(cov[:5])
        res = max(residual(con, p) for p in cov)
        return CovertexReport(
            C, covertex_locus_V(C.x, C.y), res, classify(con), None,
            _branch_split(con, cov),
        )
    if kind == "p_equilateral":
        verts = [
            Point2(math.cos(a), math.sin(a))
            for a in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3)
        ]
        t = Triangle(*verts)

        def g(r):
            p = Point2(r * math.cos(ray_angle), r * math.sin(ray_angle))
            return covertex_condition_equilateral_P(*_deltas(t, p))

        r = _bisect_along_ray(g, 0.05, 1.4)
        P = Point2(r * math.cos(ray_angle), r * math.sin(ray_angle))
        tr = build_triad(t, "p_ellipse", P)
        cov = triad_covertices(tr)
        con = fit_conic_5pts(cov[:5])
        res = max(residual(con, p) for p in cov)
        odag = conic_center(con)
        inc = incircle(t)
        err = abs(distance(odag, inc.center) - inc.radius)
        return CovertexReport(P, g(r), res, classify(con), err, _branch_split(con, cov))
    raise ValueError(f"unknown covertex check kind {kind!r}")


@dataclass(frozen=True)
class X55Report:
    circle_spread: float
    concentricity_error: float
    x7_match_error: float
    second_point: Point2 | None
    circumradius: float


def x55_conjecture_check(t: Triangle) -> X55Report:
    """Numerical evidence for the reflection-triangle circle conjecture.

    Build Q = X55 of t, the Q-reflection triangle T', and the P-hyperbola
    triad of T' through Q; report how circular the six-point conic is, how
    concentric it is with T''s circumcircle, and how close T''s circumcenter
    is to X7 of t.  Vertices are computed directly from the signed focal
    differences so the fully symmetric (equilateral) limit, where the triad
    members degenerate, still reports; the second common point is omitted
    there.
    """
    q = classic_center(t, "X55")
    tprime = reflection_triangle(t, q)
    cc = circumcircle(tprime)
    lams = _lambdas(tprime, q)
    foci = ((tprime.b, tprime.c), (tprime.c, tprime.a), (tprime.a, tprime.b))
    six = []
    for (f1, f2), lam in zip(foci, lams):
        mid = midpoint(f1, f2)
        d = f1 - f2
        n = d.norm()
        u = Point2(d.x / n, d.y / n)
        six.append(mid + (lam / 2.0) * u)
        six.append(mid + (-lam / 2.0) * u)
    dists = [distance(p, cc.center) for p in six]
    rmean = sum(dists) / 6.0
    spread = max(abs(d - rmean) for d in dists)
    x7 = classic_center(t, "X7")
    try:
        tr = build_triad(tprime, "p_hyperbola", q)
        rep = six_point_conic(tr)
        conc = distance(rep.center, cc.center) if rep.center is not None else math.inf
        second = second_common_point(tr)
    except DegenerateMember:
        # Symmetric limit: the six vertices collapse to the side midpoints.
        conc = spread
        second = None
    return X55Report(
        circle_spread=spread,
        concentricity_error=conc,
        x7_match_error=distance(cc.center, x7),
        second_point=second,
        circumradius=cc.radius,
    )
