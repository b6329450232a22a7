"""Pure-Python kernels: the fallback twin of the compiled extension.

These are the hot inner-loop primitives used by region maps, locus sweeps
and batch verification: construct a triad's six vertices, fit the conic
through five of them by cofactor expansion, classify, and evaluate
residuals.  The compiled module in _fast.pyx implements the identical
arithmetic; equivalence is covered by tests and the benchmark.

The cofactor five-point fit depends polynomially on the input points, so
the determinant of the fitted matrix varies continuously along parameter
sweeps (needed for sign-bracketing of degeneracy boundaries).  The public
object-level API in triconic.conic uses the SVD route instead; the two are
compared in tests.
"""

import math

# Classification codes shared with the compiled kernel.
CLASS_CIRCLE = 0
CLASS_ELLIPSE = 1
CLASS_PARABOLA = 2
CLASS_HYPERBOLA = 3
CLASS_RECTANGULAR_HYPERBOLA = 4
CLASS_DEGENERATE_TWO_LINES = 5
CLASS_DEGENERATE_PARALLEL_LINES = 6
CLASS_DEGENERATE_POINT = 7
CLASS_FAILED = 8

KIND_V_ELLIPSE = 0
KIND_P_ELLIPSE = 1
KIND_V_HYPERBOLA = 2
KIND_P_HYPERBOLA = 3

_DET_TOL = 1e-10
_DISC_TOL = 1e-10


def det5(m):
    """Determinant of a 5x5 row-major nested list, partial pivoting."""
    a = [row[:] for row in m]
    det = 1.0
    for col in range(5):
        piv = col
        best = abs(a[col][col])
        for r in range(col + 1, 5):
            v = abs(a[r][col])
            if v > best:
                best = v
                piv = r
        if best == 0.0:
            return 0.0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, 5):
            f = a[r][col] * inv
            if f != 0.0:
                for cc in range(col, 5):
                    a[r][cc] -= f * a[col][cc]
    return det


def fit5_cofactor(xs, ys):
    """Conic coefficients (xx, xy, yy, x, y, 1) through 5 points.

    coeff_j = (-1)^j det(design matrix with column j removed).
    """
    rows = []
    for x, y in zip(xs, ys):
        rows.append([x * x, x * y, y * y, x, y, 1.0])
    coeffs = []
    sign = 1.0
    for j in range(6):
        sub = [[row[k] for k in range(6) if k != j] for row in rows]
        coeffs.append(sign * det5(sub))
        sign = -sign
    return tuple(coeffs)


def frobenius(co):
    A, B, C, D, E, F = co
    return math.sqrt(A * A + C * C + F * F + (B * B + D * D + E * E) / 2.0)


def mat_det(co):
    A, B, C, D, E, F = co
    b, d, e = B / 2.0, D / 2.0, E / 2.0
    return A * (C * F - e * e) - b * (b * F - e * d) + d * (b * e - C * d)


def conic_eval(co, x, y):
    A, B, C, D, E, F = co
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def conic_residual(co, x, y):
    n = frobenius(co)
    if n == 0.0:
        return math.inf
    return abs(conic_eval(co, x, y)) / (n * (x * x + y * y + 1.0))


def classify_code(co):
    """Same thresholds as triconic.conic.classify, on normalized coefficients."""
    n = frobenius(co)
    if n == 0.0:
        return CLASS_FAILED
    A, B, C, D, E, F = (t / n for t in co)
    det = mat_det((A, B, C, D, E, F))
    disc = A * C - B * B / 4.0
    if abs(det) < _DET_TOL:
        if disc < -_DISC_TOL:
            return CLASS_DEGENERATE_TWO_LINES
        if disc > _DISC_TOL:
            return CLASS_DEGENERATE_POINT
        return CLASS_DEGENERATE_PARALLEL_LINES
    if abs(disc) < _DISC_TOL:
        return CLASS_PARABOLA
    if disc > 0.0:
        if abs(A - C) < _DET_TOL and abs(B / 2.0) < _DET_TOL:
            return CLASS_CIRCLE
        return CLASS_ELLIPSE
    if abs(A + C) < _DET_TOL:
        return CLASS_RECTANGULAR_HYPERBOLA
    return CLASS_HYPERBOLA


def triad_vertices12(ax, ay, bx, by, cx, cy, kind, px, py):
    """Twelve vertex coordinates (A1 A2 B1 B2 C1 C2) or None if a member
    degenerates."""
    a = math.hypot(bx - cx, by - cy)
    b = math.hypot(cx - ax, cy - ay)
    c = math.hypot(ax - bx, ay - by)
    scale = max(a, b, c)
    if kind == KIND_V_ELLIPSE:
        d1, d2, d3 = b + c, c + a, a + b
    elif kind == KIND_P_ELLIPSE:
        pb = math.hypot(px - bx, py - by)
        pc = math.hypot(px - cx, py - cy)
        pa = math.hypot(px - ax, py - ay)
        d1, d2, d3 = pb + pc, pc + pa, pa + pb
        if d1 <= a + 1e-12 * scale or d2 <= b + 1e-12 * scale or d3 <= c + 1e-12 * scale:
            return None
    elif kind == KIND_V_HYPERBOLA:
        d1, d2, d3 = c - b, a - c, b - a
        if (
            abs(d1) <= 1e-12 * scale
            or abs(d2) <= 1e-12 * scale
            or abs(d3) <= 1e-12 * scale
        ):
            return None
    elif kind == KIND_P_HYPERBOLA:
        pb = math.hypot(px - bx, py - by)
        pc = math.hypot(px - cx, py - cy)
        pa = math.hypot(px - ax, py - ay)
        d1, d2, d3 = pb - pc, pc - pa, pa - pb
        for d, s in ((d1, a), (d2, b), (d3, c)):
            if abs(d) <= 1e-12 * scale or abs(d) >= s - 1e-12 * scale:
                return None
    else:
        raise ValueError(f"unknown kind code {kind}")
    out = []
    for (f1x, f1y, f2x, f2y), d, s in (
        ((bx, by, cx, cy), d1, a),
        ((cx, cy, ax, ay), d2, b),
        ((ax, ay, bx, by), d3, c),
    ):
        mx, my = (f1x + f2x) / 2.0, (f1y + f2y) / 2.0
        ux, uy = (f1x - f2x) / s, (f1y - f2y) / s
        h = d / 2.0
        out.extend((mx + h * ux, my + h * uy, mx - h * ux, my - h * uy))
    return tuple(out)


def six_point(ax, ay, bx, by, cx, cy, kind, px, py):
    """Fused triad -> five-point fit -> classification.

    Returns (status, class_code, residual6, det_normalized, coeffs):
    status 0 on success, 1 when a member degenerates (coeffs then None).
    residual6 is the incidence residual of the sixth vertex on the conic
    fitted through the first five; det_normalized is det of the
    Frobenius-normalized matrix (its sign brackets degeneracy boundaries).
    """
    v = triad_vertices12(ax, ay, bx, by, cx, cy, kind, px, py)
    if v is None:
        return (1, CLASS_FAILED, math.inf, 0.0, None)
    xs = v[0::2]
    ys = v[1::2]
    co = fit5_cofactor(xs[:5], ys[:5])
    n = frobenius(co)
    if n == 0.0 or not all(math.isfinite(t) for t in co):
        return (1, CLASS_FAILED, math.inf, 0.0, None)
    res6 = conic_residual(co, xs[5], ys[5])
    detn = mat_det(co) / (n * n * n)
    return (0, classify_code(co), res6, detn, co)
