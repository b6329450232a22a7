"""The four focal-conic triads and their six-point conics.

A triad attaches one conic to each side: foci at (B,C), (C,A), (A,B).
V-kinds pass through the opposite vertex, P-kinds through a chosen point P.
Each triad is centered at the side midpoints, its six vertices lie on a
conic, and the per-kind concurrency/incidence statements are exposed as
checkable reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import conic as conics
from .centers import soddy_centers
from .conic import (
    Conic,
    ConicClass,
    FocalConic,
    classify,
    conic_conic_intersections,
    conic_from_foci,
    fit_conic_5pts,
    residual,
    vertices_of_focal_conic,
    covertices_of_focal_conic,
)
from .errors import (
    DegenerateMember,
    NoFiniteCenter,
    NotFound,
    PointOffSideline,
    RankDeficient,
)
from .geom import (
    LineEq,
    Point2,
    Triangle,
    collinear,
    distance,
    line_through,
    midpoint,
    signed_area,
)

TRIAD_KINDS = ("v_ellipse", "p_ellipse", "v_hyperbola", "p_hyperbola")

_MEMBER_GUARD = 1e-12


@dataclass(frozen=True)
class ConicTriad:
    kind: str
    t: Triangle
    p: Point2 | None
    # Signed per-side axis quantities: sums delta for ellipse kinds,
    # differences lambda for hyperbola kinds.
    deltas: tuple[float, float, float]
    members: tuple[FocalConic | None, FocalConic | None, FocalConic | None]
    # Perpendicular-bisector line standing in for a degenerate member
    # (isosceles V-hyperbola).
    degenerate_lines: tuple[LineEq | None, LineEq | None, LineEq | None] = (
        None,
        None,
        None,
    )

    def has_degenerate_member(self) -> bool:
        return any(m is None for m in self.members)


@dataclass(frozen=True)
class SixPointConicReport:
    conic: Conic
    conic_class: ConicClass
    residual6: float
    center: Point2 | None
    carnot_product: float


def build_triad(t: Triangle, kind: str, p: Point2 | None = None) -> ConicTriad:
    if kind not in TRIAD_KINDS:
        raise ValueError(f"unknown triad kind {kind!r}")
    if kind.startswith("p_"):
        if p is None:
            raise ValueError(f"{kind} needs a point P")
        for v in t.vertices():
            if distance(p, v) <= _MEMBER_GUARD * t.scale():
                raise DegenerateMember(f"P coincides with vertex {v}")
    else:
        p = None

    a, bb, cc = t.sides()
    A, B, C = t.a, t.b, t.c
    foci = ((B, C), (C, A), (A, B))
    sides = (a, bb, cc)
    scale = t.scale()

    if kind == "v_ellipse":
        deltas = (bb + cc, cc + a, a + bb)
        members = tuple(
            FocalConic(f1, f2, d, "ellipse") for (f1, f2), d in zip(foci, deltas)
        )
        return ConicTriad(kind, t, None, deltas, members)

    if kind == "p_ellipse":
        deltas = (
            distance(p, B) + distance(p, C),
            distance(p, C) + distance(p, A),
            distance(p, A) + distance(p, B),
        )
        for d, s in zip(deltas, sides):
            if d <= s + _MEMBER_GUARD * scale:
                raise DegenerateMember("P on a side segment: ellipse member collapses")
        members = tuple(
            FocalConic(f1, f2, d, "ellipse") for (f1, f2), d in zip(foci, deltas)
        )
        return ConicTriad(kind, t, p, deltas, members)

    if kind == "v_hyperbola":
        deltas = (cc - bb, a - cc, bb - a)
        members: list[FocalConic | None] = []
        deglines: list[LineEq | None] = []
        for (f1, f2), lam, s in zip(foci, deltas, sides):
            if abs(lam) <= _MEMBER_GUARD * scale:
                members.append(None)
                deglines.append(_perp_bisector(f1, f2))
            else:
                members.append(FocalConic(f1, f2, abs(lam), "hyperbola"))
                deglines.append(None)
        return ConicTriad(kind, t, None, deltas, tuple(members), tuple(deglines))

    # p_hyperbola
    deltas = (
        distance(p, B) - distance(p, C),
        distance(p, C) - distance(p, A),
        distance(p, A) - distance(p, B),
    )
    for lam, s in zip(deltas, sides):
        if abs(lam) <= _MEMBER_GUARD * scale:
            raise DegenerateMember("P on a perpendicular bisector: lambda = 0")
        if abs(lam) >= s - _MEMBER_GUARD * scale:
            raise DegenerateMember("P on a sideline extension: hyperbola collapses")
    members = tuple(
        FocalConic(f1, f2, abs(lam), "hyperbola") for (f1, f2), lam in zip(foci, deltas)
    )
    return ConicTriad(kind, t, p, deltas, members)


def _perp_bisector(p: Point2, q: Point2) -> LineEq:
    d = q - p
    m = midpoint(p, q)
    return LineEq(d.x, d.y, -(d.x * m.x + d.y * m.y))


def triad_vertices(tr: ConicTriad) -> tuple[Point2, ...]:
    """(A1, A2, B1, B2, C1, C2).

    The first vertex of each pair sits at center + (delta/2) * unit(f1 - f2)
    with the *signed* delta, which makes (A1, B1, C1) the extouch triangle
    for V-hyperbolas and matches the excircle tangency labels for V-ellipses.
    A degenerate member contributes its midpoint twice.
    """
    t = tr.t
    foci = ((t.b, t.c), (t.c, t.a), (t.a, t.b))
    out: list[Point2] = []
    for (f1, f2), delta, member in zip(foci, tr.deltas, tr.members):
        cen = midpoint(f1, f2)
        if member is None:
            out.extend([cen, cen])
            continue
        d = f1 - f2
        n = d.norm()
        u = Point2(d.x / n, d.y / n)
        half = delta / 2.0
        out.append(cen + half * u)
        out.append(cen + (-half) * u)
    return tuple(out)


def triad_covertices(tr: ConicTriad) -> tuple[Point2, ...]:
    """Co-vertices of the three members; for hyperbolas these are the
    conjugate-axis endpoints (rendering parity only)."""
    out: list[Point2] = []
    for member in tr.members:
        if member is None:
            raise DegenerateMember("degenerate member has no co-vertices")
        out.extend(covertices_of_focal_conic(member))
    return tuple(out)


def carnot_product(t: Triangle, six) -> float:
    """Product of the six unsigned sideline ratios (Carnot's criterion).

    Expects (A1, A2) on line BC, (B1, B2) on CA, (C1, C2) on AB.
    """
    A1, A2, B1, B2, C1, C2 = six
    for p, (e1, e2) in (
        (A1, (t.b, t.c)),
        (A2, (t.b, t.c)),
        (B1, (t.c, t.a)),
        (B2, (t.c, t.a)),
        (C1, (t.a, t.b)),
        (C2, (t.a, t.b)),
    ):
        if not collinear(p, e1, e2):
            raise PointOffSideline(f"{p} off its sideline")
    return (
        (distance(t.a, C1) / distance(t.b, C1))
        * (distance(t.a, C2) / distance(t.b, C2))
        * (distance(t.b, A1) / distance(t.c, A1))
        * (distance(t.b, A2) / distance(t.c, A2))
        * (distance(t.c, B1) / distance(t.a, B1))
        * (distance(t.c, B2) / distance(t.a, B2))
    )


def menelaus_check(t: Triangle, p1: Point2, p2: Point2, p3: Point2) -> float:
    """Unsigned Menelaus ratio product for p1 on BC, p2 on CA, p3 on AB.

    Equals 1 for collinear triples; the caller applies the signed convention
    (midpoints also give 1 without being collinear).
    """
    for p, (e1, e2) in ((p1, (t.b, t.c)), (p2, (t.c, t.a)), (p3, (t.a, t.b))):
        if not collinear(p, e1, e2):
            raise PointOffSideline(f"{p} off its sideline")
    return (
        (distance(p1, t.c) / distance(p1, t.b))
        * (distance(p3, t.b) / distance(p3, t.a))
        * (distance(p2, t.a) / distance(p2, t.c))
    )


def six_point_conic(tr: ConicTriad) -> SixPointConicReport:
    """Fit the conic on five triad vertices and report the sixth residual.

    The five fit points are chosen by farthest-point selection so that a
    nearly coincident vertex pair (degenerate or near-degenerate member)
    does not poison the design matrix.
    """
    six = triad_vertices(tr)
    pts = list(six)
    sel = [0]
    while len(sel) < 5:
        best, best_d = None, -1.0
        for i, p in enumerate(pts):
            if i in sel:
                continue
            d = min(distance(p, pts[j]) for j in sel)
            if d > best_d:
                best, best_d = i, d
        sel.append(best)
    if min(
        distance(pts[i], pts[j]) for i in sel for j in sel if i < j
    ) <= 1e-9 * tr.t.scale():
        raise RankDeficient("fewer than 5 distinct triad vertices")
    c = fit_conic_5pts([pts[i] for i in sel])
    residual6 = max(residual(c, p) for p in six)
    try:
        cen = conics.center(c)
    except NoFiniteCenter:
        cen = None
    return SixPointConicReport(
        conic=c,
        conic_class=classify(c),
        residual6=residual6,
        center=cen,
        carnot_product=carnot_product(tr.t, six),
    )


def pairwise_intersections(tr: ConicTriad) -> list[list[Point2]]:
    """Real intersections for the pairs (b,c), (c,a), (a,b).

    Index 0 is the "A" pair (members with foci (C,A) and (A,B)), matching
    the naming A', A'' for the intersections of the b- and c-members.
    An empty list means no real intersection was found for that pair.
    """
    if tr.has_degenerate_member():
        raise DegenerateMember("pairwise intersections need nondegenerate members")
    cs = [conic_from_foci(m) for m in tr.members]
    pairs = ((1, 2), (2, 0), (0, 1))
    return [conic_conic_intersections(cs[i], cs[j]) for i, j in pairs]


def _focal_diff_residual(p: Point2, member: FocalConic) -> float:
    return abs(
        abs(distance(p, member.focus1) - distance(p, member.focus2))
        - member.axis_length
    )


def _line_contains(line: LineEq, p: Point2) -> float:
    return line.distance_to(p)


def _pencil_degenerate_lines(c1: Conic, c2: Conic) -> list[tuple[LineEq, LineEq]]:
    import numpy as np

    m1 = c1.m / np.linalg.norm(c1.m)
    m2 = c2.m / np.linalg.norm(c2.m)
    f0 = float(np.linalg.det(m1))
    f3 = float(np.linalg.det(m2))
    fp = float(np.linalg.det(m1 + m2))
    fm = float(np.linalg.det(m1 - m2))
    c2_ = (fp + fm) / 2.0 - f0
    c1_ = (fp - fm) / 2.0 - f3
    roots = np.roots([f3, c2_, c1_, f0])
    out = []
    for r in roots:
        if abs(r.imag) > 1e-7 * (1.0 + abs(r)):
            continue
        D = m1 + float(r.real) * m2
        try:
            out.append(conics.split_degenerate(Conic(D, "cartesian")))
        except Exception:
            continue
    return out


def two_branch_chord(tr: ConicTriad, pair_index: int) -> LineEq:
    """Chord through the opposite-branch intersections of a hyperbola pair.

    The pencil of the pair degenerates into line pairs; the member that has
    the Soddy line (through X175/X176) as one component has the sought chord
    as the other.  Works even when the chord's endpoints are complex.
    """
    if tr.kind != "v_hyperbola":
        raise ValueError("two_branch_chord applies to V-hyperbola triads")
    x175, x176 = soddy_centers(tr.t)
    pairs = ((1, 2), (2, 0), (0, 1))
    i, j = pairs[pair_index]
    ci = conic_from_foci(tr.members[i])
    cj = conic_from_foci(tr.members[j])
    scale = tr.t.scale()
    best = None
    best_score = math.inf
    for g, h in _pencil_degenerate_lines(ci, cj):
        for soddy_line, chord in ((g, h), (h, g)):
            score = _line_contains(soddy_line, x176)
            if x175 is not None:
                score = max(score, _line_contains(soddy_line, x175))
            if score < best_score:
                best_score = score
                best = chord
    if best is None or best_score > 1e-6 * scale:
        raise NotFound("no pencil member pairs the Soddy line with a chord")
    return best


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    passed: bool
    residual: float


@dataclass(frozen=True)
class ConcurrencyReport:
    kind: str
    claims: tuple[ClaimResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.claims), default=0.0)


def concurrency_theorems(tr: ConicTriad, tol: float = 1e-8) -> ConcurrencyReport:
    """Per-kind concurrency/incidence claims with residuals.

    V-ellipse: the chords through the pairwise intersections pass through
    the excenters and concur at X20.  V-hyperbola: the triad passes through
    both Soddy centers, and the two-branch chords concur at X8.
    """
    from .centers import classic_center

    t = tr.t
    diam = 2.0 * (t.side_a * t.side_b * t.side_c) / (4.0 * t.area)
    claims: list[ClaimResult] = []

    if tr.kind == "v_ellipse":
        inters = pairwise_intersections(tr)
        x20 = classic_center(t, "X20")
        exc = [
            classic_center(t, "excenterA"),
            classic_center(t, "excenterB"),
            classic_center(t, "excenterC"),
        ]
        for idx, label in enumerate("ABC"):
            pts = inters[idx]
            if len(pts) < 2:
                claims.append(ClaimResult(f"chord {label} exists", False, math.inf))
                continue
            chord = line_through(pts[0], pts[1])
            r_exc = chord.distance_to(exc[idx]) / diam
            claims.append(ClaimResult(f"chord {label} through excenter", r_exc <= tol, r_exc))
            r_x20 = chord.distance_to(x20) / diam
            claims.append(ClaimResult(f"chord {label} through X20", r_x20 <= tol, r_x20))
        return ConcurrencyReport(tr.kind, tuple(claims))

    if tr.kind == "v_hyperbola":
        if tr.has_degenerate_member():
            raise DegenerateMember("concurrency theorems need nondegenerate members")
        x175, x176 = soddy_centers(t)
        for idx, label in enumerate("abc"):
            member = tr.members[idx]
            r176 = _focal_diff_residual(x176, member) / diam
            claims.append(ClaimResult(f"H_{label} through X176", r176 <= tol, r176))
            if x175 is not None:
                r175 = _focal_diff_residual(x175, member) / diam
                claims.append(ClaimResult(f"H_{label} through X175", r175 <= tol, r175))
        x8 = classic_center(t, "X8")
        for idx, label in enumerate("ABC"):
            chord = two_branch_chord(tr, idx)
            r = chord.distance_to(x8) / diam
            claims.append(ClaimResult(f"two-branch chord {label} through X8", r <= tol, r))
        return ConcurrencyReport(tr.kind, tuple(claims))

    raise ValueError(f"no concurrency theorems registered for {tr.kind}")


def second_common_point(tr: ConicTriad) -> Point2:
    """Second common point P' of a P-hyperbola triad.

    A triple-common point carries signed focal differences (+l_a, +l_b, +l_c)
    or (-l_a, -l_b, -l_c); mixed patterns would force some l to vanish.  P'
    usually sits on the branches opposite P, but the same-branch double
    intersection also occurs (the analog of the external Soddy regime), so
    both coherent patterns are accepted.
    """
    if tr.kind != "p_hyperbola":
        raise ValueError("second_common_point applies to P-hyperbola triads")
    t, p = tr.t, tr.p
    scale = t.scale()
    foci = ((t.b, t.c), (t.c, t.a), (t.a, t.b))

    def lam_signs(q: Point2) -> tuple[float, ...]:
        return tuple(distance(q, f1) - distance(q, f2) for f1, f2 in foci)

    best = None
    best_res = math.inf
    for pair in pairwise_intersections(tr):
        for q in pair:
            if distance(q, p) <= 1e-7 * scale:
                continue
            got = lam_signs(q)
            res = min(
                max(abs(g - lam) for g, lam in zip(got, tr.deltas)),
                max(abs(g + lam) for g, lam in zip(got, tr.deltas)),
            )
            if res < best_res:
                best_res = res
                best = q
    if best is None or best_res > 1e-6 * scale:
        raise NotFound("no second triple-common point found")
    return best


def equal_area_check(tr: ConicTriad) -> tuple[float, float]:
    """Areas of the two vertex triangles (A1,B1,C1) and (A2,B2,C2)."""
    A1, A2, B1, B2, C1, C2 = triad_vertices(tr)
    s1 = abs(signed_area(A1, B1, C1))
    s2 = abs(signed_area(A2, B2, C2))
    return s1, s2
