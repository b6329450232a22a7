"""General conics: representation, classification, focal construction,
five-point fitting, degenerate splitting and conic-conic intersection.

A conic is stored as a symmetric 3x3 matrix m with p^T m p = 0 for
homogeneous p.  Cartesian frame uses p = (x, y, 1); barycentric frame uses
p = (u, v, w) relative to a reference triangle.  Matrices are normalized to
unit Frobenius norm on construction, so the fixed algebraic thresholds in
config apply uniformly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DET_DEGENERATE_TOL, DISC_PARABOLA_TOL, RANK_REL_TOL
from .errors import (
    InvalidAxisLength,
    LineOnConic,
    NoFiniteCenter,
    RankDeficient,
)
from .geom import LineEq, Point2, Triangle, distance, midpoint


class ConicClass(enum.Enum):
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    RECTANGULAR_HYPERBOLA = "rectangular_hyperbola"
    DEGENERATE_TWO_LINES = "degenerate_two_lines"
    DEGENERATE_PARALLEL_LINES = "degenerate_parallel_lines"
    DEGENERATE_POINT = "degenerate_point"

    def is_degenerate(self) -> bool:
        return self in (
            ConicClass.DEGENERATE_TWO_LINES,
            ConicClass.DEGENERATE_PARALLEL_LINES,
            ConicClass.DEGENERATE_POINT,
        )


@dataclass(frozen=True)
class Conic:
    """Symmetric coefficient matrix plus frame tag."""

    m: np.ndarray
    frame: str = "cartesian"

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"conic matrix must be 3x3, got {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(m).max())):
            raise ValueError("conic matrix must be symmetric")
        norm = np.linalg.norm(m)
        if norm == 0.0:
            raise ValueError("zero conic matrix")
        m = (m + m.T) / (2.0 * norm)
        object.__setattr__(self, "m", m)
        if self.frame not in ("cartesian", "bary"):
            raise ValueError(f"unknown frame {self.frame!r}")

    @classmethod
    def from_coeffs(cls, coeffs, frame: str = "cartesian") -> "Conic":
        """Coefficients in the order [xx, xy, yy, x, y, 1]."""
        A, B, C, D, E, F = (float(t) for t in coeffs)
        m = np.array(
            [
                [A, B / 2.0, D / 2.0],
                [B / 2.0, C, E / 2.0],
                [D / 2.0, E / 2.0, F],
            ]
        )
        return cls(m, frame)

    def coeffs(self) -> tuple[float, float, float, float, float, float]:
        m = self.m
        return (
            m[0, 0],
            2.0 * m[0, 1],
            m[1, 1],
            2.0 * m[0, 2],
            2.0 * m[1, 2],
            m[2, 2],
        )

    def __call__(self, p: Point2) -> float:
        v = np.array([p.x, p.y, 1.0])
        return float(v @ self.m @ v)


@dataclass(frozen=True)
class FocalConic:
    """Ellipse or hyperbola given by its two foci and 2*alpha.

    axis_length is the sum of focal radii for an ellipse and the absolute
    difference for a hyperbola.
    """

    focus1: Point2
    focus2: Point2
    axis_length: float
    kind: str  # "ellipse" | "hyperbola"

    def __post_init__(self):
        if self.kind not in ("ellipse", "hyperbola"):
            raise ValueError(f"unknown focal conic kind {self.kind!r}")
        f = distance(self.focus1, self.focus2)
        if not (self.axis_length > 0.0):
            raise InvalidAxisLength(f"axis_length {self.axis_length} must be > 0")
        if self.kind == "ellipse" and not (self.axis_length > f):
            raise InvalidAxisLength(
                f"ellipse needs axis_length > focal distance ({self.axis_length} <= {f})"
            )
        if self.kind == "hyperbola" and not (0.0 < self.axis_length < f):
            raise InvalidAxisLength(
                f"hyperbola needs 0 < axis_length < focal distance ({self.axis_length} vs {f})"
            )

    @property
    def center(self) -> Point2:
        return midpoint(self.focus1, self.focus2)

    def axis_unit(self) -> Point2:
        d = self.focus1 - self.focus2
        n = d.norm()
        return Point2(d.x / n, d.y / n)

    def semi_axes(self) -> tuple[float, float]:
        """(alpha, beta): semi axis along the focal line and perpendicular."""
        alpha = self.axis_length / 2.0
        chalf = distance(self.focus1, self.focus2) / 2.0
        beta = math.sqrt(abs(alpha * alpha - chalf * chalf))
        return alpha, beta


def conic_from_foci(fc: FocalConic) -> Conic:
    """Cartesian conic of {q : |q-f1| +- |q-f2| = +-axis_length}."""
    alpha, beta = fc.semi_axes()
    o = fc.center
    u = fc.axis_unit()
    v = u.perp()
    # H maps (x, y, 1) to focal-frame coordinates (X, Y, 1).
    H = np.array(
        [
            [u.x, u.y, -(u.x * o.x + u.y * o.y)],
            [v.x, v.y, -(v.x * o.x + v.y * o.y)],
            [0.0, 0.0, 1.0],
        ]
    )
    s = 1.0 if fc.kind == "ellipse" else -1.0
    D = np.diag([1.0 / (alpha * alpha), s / (beta * beta), -1.0])
    return Conic(H.T @ D @ H, "cartesian")


def vertices_of_focal_conic(fc: FocalConic) -> tuple[Point2, Point2]:
    alpha, _ = fc.semi_axes()
    o, u = fc.center, fc.axis_unit()
    return (o + alpha * u, o + (-alpha) * u)


def covertices_of_focal_conic(fc: FocalConic) -> tuple[Point2, Point2]:
    """For a hyperbola these are the conjugate-axis endpoints (rendering only)."""
    _, beta = fc.semi_axes()
    o, v = fc.center, fc.axis_unit().perp()
    return (o + beta * v, o + (-beta) * v)


def _normalized(m: np.ndarray) -> np.ndarray:
    return m / np.linalg.norm(m)


def classify(c: Conic, triangle: Triangle | None = None) -> ConicClass:
    """Classify a conic; barycentric conics are converted to Cartesian first."""
    if c.frame == "bary":
        if triangle is None:
            raise ValueError("classification of a barycentric conic needs its triangle")
        c = conic_bary_to_cartesian(c, triangle)
    m = _normalized(c.m)
    A, C = m[0, 0], m[1, 1]
    Bh = m[0, 1]
    det = float(np.linalg.det(m))
    disc = A * C - Bh * Bh
    if abs(det) < DET_DEGENERATE_TOL:
        if disc < -DISC_PARABOLA_TOL:
            return ConicClass.DEGENERATE_TWO_LINES
        if disc > DISC_PARABOLA_TOL:
            return ConicClass.DEGENERATE_POINT
        return ConicClass.DEGENERATE_PARALLEL_LINES
    if abs(disc) < DISC_PARABOLA_TOL:
        return ConicClass.PARABOLA
    if disc > 0.0:
        if abs(A - C) < DET_DEGENERATE_TOL and abs(Bh) < DET_DEGENERATE_TOL:
            return ConicClass.CIRCLE
        return ConicClass.ELLIPSE
    if abs(A + C) < DET_DEGENERATE_TOL:
        return ConicClass.RECTANGULAR_HYPERBOLA
    return ConicClass.HYPERBOLA


def center(c: Conic) -> Point2:
    """Finite center: gradient solution for central conics, singular point
    for a crossing line pair."""
    m = _normalized(c.m)
    A, C = m[0, 0], m[1, 1]
    Bh = m[0, 1]
    disc = A * C - Bh * Bh
    if abs(disc) > DISC_PARABOLA_TOL:
        x = (-m[0, 2] * C + m[1, 2] * Bh) / disc
        y = (-m[1, 2] * A + m[0, 2] * Bh) / disc
        return Point2(float(x), float(y))
    # Quadratic part singular: only a line pair crossing at infinity or a
    # parabola remains; neither has a finite center.
    raise NoFiniteCenter("conic has no finite center")


def fit_conic_5pts(pts, frame: str = "cartesian") -> Conic:
    """Unique conic through 5 points via the nullspace of the design matrix.

    Points are centered and scaled before building the monomial rows (the
    raw basis is badly conditioned for small clusters away from the origin);
    the nullspace conic is mapped back through the normalizing frame.
    """
    pts = list(pts)
    if len(pts) != 5:
        raise ValueError(f"need exactly 5 points, got {len(pts)}")
    xy = []
    for p in pts:
        x, y = (p.x, p.y) if isinstance(p, Point2) else (float(p[0]), float(p[1]))
        xy.append((x, y))
    cx = sum(x for x, _ in xy) / 5.0
    cy = sum(y for _, y in xy) / 5.0
    spread = math.sqrt(sum((x - cx) ** 2 + (y - cy) ** 2 for x, y in xy) / 5.0)
    if spread == 0.0:
        raise RankDeficient("coincident points")
    rows = []
    for x, y in xy:
        u, v = (x - cx) / spread, (y - cy) / spread
        rows.append([u * u, u * v, v * v, u, v, 1.0])
    M = np.array(rows)
    _, s, Vh = np.linalg.svd(M)
    if s[0] == 0.0 or s[4] <= RANK_REL_TOL * s[0]:
        raise RankDeficient("five points do not determine a unique conic")
    mn = Conic.from_coeffs(Vh[-1], frame).m
    N = np.array(
        [
            [1.0 / spread, 0.0, -cx / spread],
            [0.0, 1.0 / spread, -cy / spread],
            [0.0, 0.0, 1.0],
        ]
    )
    return Conic(N.T @ mn @ N, frame)


def residual(c: Conic, p: Point2) -> float:
    """|p^T m p| / (||m||_F * ||p_hom||^2); <= tol means incidence."""
    v = np.array([p.x, p.y, 1.0])
    val = abs(float(v @ c.m @ v))
    return val / (float(np.linalg.norm(c.m)) * float(v @ v))


def residual_bary(c: Conic, b) -> float:
    """Barycentric-frame incidence residual for a homogeneous triple."""
    v = np.array([b.u, b.v, b.w], dtype=float)
    v = v / np.abs(v).max()
    val = abs(float(v @ c.m @ v))
    return val / (float(np.linalg.norm(c.m)) * float(v @ v))


def conic_line_intersection(c: Conic, line: LineEq) -> list[Point2]:
    """Real intersection points, stable quadratic handling."""
    if c.frame != "cartesian" or line.frame != "cartesian":
        raise ValueError("conic_line_intersection expects cartesian frame")
    # Parametrize the line as p0 + t*d.
    nrm2 = line.l * line.l + line.m * line.m
    p0 = Point2(-line.l * line.n / nrm2, -line.m * line.n / nrm2)
    d = Point2(-line.m, line.l)
    dn = d.norm()
    d = Point2(d.x / dn, d.y / dn)
    m = c.m
    v0 = np.array([p0.x, p0.y, 1.0])
    vd = np.array([d.x, d.y, 0.0])
    qa = float(vd @ m @ vd)
    qb = 2.0 * float(v0 @ m @ vd)
    qc = float(v0 @ m @ v0)
    scale = float(np.linalg.norm(m))
    if abs(qa) <= 1e-14 * scale and abs(qb) <= 1e-14 * scale:
        if abs(qc) <= 1e-12 * scale:
            raise LineOnConic("line is a component of the conic")
        return []
    if abs(qa) <= 1e-14 * scale:
        t = -qc / qb
        return [Point2(p0.x + t * d.x, p0.y + t * d.y)]
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        if disc > -(1e-12 * scale) ** 2 - 1e-30:
            t = -qb / (2.0 * qa)
            return [Point2(p0.x + t * d.x, p0.y + t * d.y)]
        return []
    sq = math.sqrt(disc)
    q = -(qb + math.copysign(sq, qb)) / 2.0
    t1 = q / qa
    t2 = qc / q if q != 0.0 else -qb / (2.0 * qa)
    out = [Point2(p0.x + t * d.x, p0.y + t * d.y) for t in (t1, t2)]
    return out


def tangency_discriminant(c: Conic, line: LineEq) -> float:
    """Normalized discriminant of the restriction of c to the line.

    ~0 means the line meets the conic in a double point (tangency).
    """
    nrm2 = line.l * line.l + line.m * line.m
    p0 = Point2(-line.l * line.n / nrm2, -line.m * line.n / nrm2)
    d = Point2(-line.m / math.sqrt(nrm2), line.l / math.sqrt(nrm2))
    m = _normalized(c.m)
    v0 = np.array([p0.x, p0.y, 1.0])
    vd = np.array([d.x, d.y, 0.0])
    qa = float(vd @ m @ vd)
    qb = 2.0 * float(v0 @ m @ vd)
    qc = float(v0 @ m @ v0)
    return qb * qb - 4.0 * qa * qc


def conic_bary_to_cartesian(c: Conic, t: Triangle) -> Conic:
    """Congruent Cartesian conic via the linear barycentric change of frame."""
    if c.frame != "bary":
        raise ValueError("conic is not in a barycentric frame")
    # Rows of T give barycentric coordinates (up to common scale) of (x, y, 1).
    ax, ay = t.a.x, t.a.y
    bx, by = t.b.x, t.b.y
    cx, cy = t.c.x, t.c.y
    T = np.array(
        [
            [by - cy, cx - bx, bx * cy - cx * by],
            [cy - ay, ax - cx, cx * ay - ax * cy],
            [ay - by, bx - ax, ax * by - bx * ay],
        ]
    )
    return Conic(T.T @ c.m @ T, "cartesian")


def conic_cartesian_to_bary(c: Conic, t: Triangle) -> Conic:
    """Inverse frame change of conic_bary_to_cartesian."""
    if c.frame != "cartesian":
        raise ValueError("conic is not in the cartesian frame")
    V = np.array(
        [
            [t.a.x, t.b.x, t.c.x],
            [t.a.y, t.b.y, t.c.y],
            [1.0, 1.0, 1.0],
        ]
    )
    return Conic(V.T @ c.m @ V, "bary")


def split_degenerate(c: Conic) -> tuple[LineEq, LineEq]:
    """Split a degenerate conic into its two (possibly equal) real lines.

    Rank 2: recover the singular point from the adjugate, add its cross
    matrix to expose a rank-1 dyad, read off the lines.  Rank 1: the matrix
    itself is the dyad of a double line.
    """
    m = _normalized(c.m)
    B = _adjugate(m)
    i = int(np.argmax(np.abs(np.diag(B))))
    bii = B[i, i]
    if abs(bii) <= 1e-12:
        # Rank 1: double line g g^T.
        j = int(np.argmax(np.abs(np.diag(m))))
        if m[j, j] == 0.0:
            raise LineOnConic("cannot split conic of rank < 1")
        g = m[j, :] / math.sqrt(abs(m[j, j]))
        line = LineEq(g[0], g[1], g[2])
        return (line, line)
    if bii > 0.0:
        # Real singular point but complex line pair (point conic).
        raise LineOnConic("degenerate conic has no real line components")
    beta = math.sqrt(-bii)
    p = B[:, i] / beta
    Mp = np.array([[0.0, p[2], -p[1]], [-p[2], 0.0, p[0]], [p[1], -p[0], 0.0]])
    Cm = m + Mp
    # Largest entry of the rank-1 matrix picks a stable row/column pair.
    k = int(np.argmax(np.abs(Cm)))
    r, s = divmod(k, 3)
    g = Cm[r, :]
    h = Cm[:, s]
    return (LineEq(g[0], g[1], g[2]), LineEq(h[0], h[1], h[2]))


def _adjugate(m: np.ndarray) -> np.ndarray:
    out = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            s = [k for k in range(3) if k != j]
            minor = m[np.ix_(r, s)]
            out[j, i] = ((-1) ** (i + j)) * (
                minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0]
            )
    return out


def conic_conic_intersections(c1: Conic, c2: Conic) -> list[Point2]:
    """Real intersections of two conics by pencil degeneration.

    Finds a degenerate member of the pencil c1 + lambda*c2, splits it into
    lines, intersects those with c1 and keeps candidates lying on both
    conics after one Newton polish.
    """
    m1, m2 = _normalized(c1.m), _normalized(c2.m)
    f0 = float(np.linalg.det(m1))
    f3 = float(np.linalg.det(m2))
    fp = float(np.linalg.det(m1 + m2))
    fm = float(np.linalg.det(m1 - m2))
    c2_ = (fp + fm) / 2.0 - f0
    c1_ = (fp - fm) / 2.0 - f3
    roots = np.roots([f3, c2_, c1_, f0]) if abs(f3) > 1e-14 else np.roots([c2_, c1_, f0])
    real_roots = [float(r.real) for r in roots if abs(r.imag) <= 1e-7 * (1.0 + abs(r))]
    real_roots.append(float("inf"))  # c2 itself, in case it is degenerate
    candidates: list[Point2] = []
    for lam in real_roots:
        D = m2 if math.isinf(lam) else m1 + lam * m2
        nrm = np.linalg.norm(D)
        if nrm <= 1e-13:
            continue
        try:
            g, h = split_degenerate(Conic(D, "cartesian"))
        except LineOnConic:
            continue
        base = c2 if math.isinf(lam) else c1
        for line in (g, h):
            try:
                pts = conic_line_intersection(base, line)
            except LineOnConic:
                continue
            candidates.extend(pts)
    return _dedupe_on_both(candidates, m1, m2)


def _dedupe_on_both(candidates: list[Point2], m1: np.ndarray, m2: np.ndarray) -> list[Point2]:
    out: list[Point2] = []
    scale = 1.0 + max((max(abs(p.x), abs(p.y)) for p in candidates), default=0.0)
    for p in candidates:
        p = _newton_polish(p, m1, m2)
        if p is None:
            continue
        v = np.array([p.x, p.y, 1.0])
        n2 = float(v @ v)
        r1 = abs(float(v @ m1 @ v)) / n2
        r2 = abs(float(v @ m2 @ v)) / n2
        if max(r1, r2) > 1e-7:
            continue
        if any(distance(p, q) <= 1e-7 * scale for q in out):
            continue
        out.append(p)
    return out


def _newton_polish(p: Point2, m1: np.ndarray, m2: np.ndarray, iters: int = 3):
    x, y = p.x, p.y
    for _ in range(iters):
        v = np.array([x, y, 1.0])
        f1 = float(v @ m1 @ v)
        f2 = float(v @ m2 @ v)
        g1 = 2.0 * (m1 @ v)
        g2 = 2.0 * (m2 @ v)
        J = np.array([[g1[0], g1[1]], [g2[0], g2[1]]])
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        if abs(det) < 1e-14:
            break
        dx = (-f1 * J[1, 1] + f2 * J[0, 1]) / det
        dy = (-f2 * J[0, 0] + f1 * J[1, 0]) / det
        x, y = x + dx, y + dy
        if not (math.isfinite(x) and math.isfinite(y)):
            return None
    return Point2(x, y) if math.isfinite(x) and math.isfinite(y) else None
