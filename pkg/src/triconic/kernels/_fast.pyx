# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same arithmetic as the pure-Python twin in py.py.

Covers the hot inner-loop primitives (triad vertices, cofactor five-point
fit, classification, residuals) used by region maps, locus sweeps and
batch verification.  Keep any algorithmic change mirrored in py.py; the
equivalence tests compare the two backends term by term.
"""

from libc.math cimport fabs, hypot, isfinite, INFINITY, sqrt

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

cdef double _DET_TOL = 1e-10
cdef double _DISC_TOL = 1e-10


cdef double _det5(double[5][5] a) noexcept:
    cdef int col, r, piv, cc
    cdef double det = 1.0, best, v, inv, f, tmp
    for col in range(5):
        piv = col
        best = fabs(a[col][col])
        for r in range(col + 1, 5):
            v = fabs(a[r][col])
            if v > best:
                best = v
                piv = r
        if best == 0.0:
            return 0.0
        if piv != col:
            for cc in range(5):
                tmp = a[col][cc]
                a[col][cc] = a[piv][cc]
                a[piv][cc] = tmp
            det = -det
        det *= a[col][col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, 5):
            f = a[r][col] * inv
            if f != 0.0:
                for cc in range(col, 5):
                    a[r][cc] -= f * a[col][cc]
    return det


cdef void _fit5(double* xs, double* ys, double* co) noexcept:
    cdef double rows[5][6]
    cdef double sub[5][5]
    cdef int i, j, k, kk
    cdef double sign = 1.0
    for i in range(5):
        rows[i][0] = xs[i] * xs[i]
        rows[i][1] = xs[i] * ys[i]
        rows[i][2] = ys[i] * ys[i]
        rows[i][3] = xs[i]
        rows[i][4] = ys[i]
        rows[i][5] = 1.0
    for j in range(6):
        for i in range(5):
            kk = 0
            for k in range(6):
                if k != j:
                    sub[i][kk] = rows[i][k]
                    kk += 1
        co[j] = sign * _det5(sub)
        sign = -sign


cdef double _frobenius(double* co) noexcept:
    return sqrt(
        co[0] * co[0]
        + co[2] * co[2]
        + co[5] * co[5]
        + (co[1] * co[1] + co[3] * co[3] + co[4] * co[4]) / 2.0
    )


cdef double _mat_det(double* co) noexcept:
    cdef double b = co[1] / 2.0, d = co[3] / 2.0, e = co[4] / 2.0
    return (
        co[0] * (co[2] * co[5] - e * e)
        - b * (b * co[5] - e * d)
        + d * (b * e - co[2] * d)
    )


cdef double _conic_eval(double* co, double x, double y) noexcept:
    return (
        co[0] * x * x
        + co[1] * x * y
        + co[2] * y * y
        + co[3] * x
        + co[4] * y
        + co[5]
    )


cdef int _classify(double* co) noexcept:
    cdef double n = _frobenius(co)
    cdef double cn[6]
    cdef int i
    if n == 0.0:
        return CLASS_FAILED
    for i in range(6):
        cn[i] = co[i] / n
    cdef double det = _mat_det(cn)
    cdef double disc = cn[0] * cn[2] - cn[1] * cn[1] / 4.0
    if fabs(det) < _DET_TOL:
        if disc < -_DISC_TOL:
            return CLASS_DEGENERATE_TWO_LINES
        if disc > _DISC_TOL:
            return CLASS_DEGENERATE_POINT
        return CLASS_DEGENERATE_PARALLEL_LINES
    if fabs(disc) < _DISC_TOL:
        return CLASS_PARABOLA
    if disc > 0.0:
        if fabs(cn[0] - cn[2]) < _DET_TOL and fabs(cn[1] / 2.0) < _DET_TOL:
            return CLASS_CIRCLE
        return CLASS_ELLIPSE
    if fabs(cn[0] + cn[2]) < _DET_TOL:
        return CLASS_RECTANGULAR_HYPERBOLA
    return CLASS_HYPERBOLA


cdef int _vertices12(
    double ax, double ay, double bx, double by, double cx, double cy,
    int kind, double px, double py, double* out
) noexcept:
    """Fills out[12]; returns 0 on success, 1 when a member degenerates,
    -1 on an unknown kind code."""
    cdef double a = hypot(bx - cx, by - cy)
    cdef double b = hypot(cx - ax, cy - ay)
    cdef double c = hypot(ax - bx, ay - by)
    cdef double scale = a
    if b > scale:
        scale = b
    if c > scale:
        scale = c
    cdef double d1, d2, d3, pa, pb, pc
    if kind == 0:
        d1 = b + c
        d2 = c + a
        d3 = a + b
    elif kind == 1:
        pb = hypot(px - bx, py - by)
        pc = hypot(px - cx, py - cy)
        pa = hypot(px - ax, py - ay)
        d1 = pb + pc
        d2 = pc + pa
        d3 = pa + pb
        if (
            d1 <= a + 1e-12 * scale
            or d2 <= b + 1e-12 * scale
            or d3 <= c + 1e-12 * scale
        ):
            return 1
    elif kind == 2:
        d1 = c - b
        d2 = a - c
        d3 = b - a
        if (
            fabs(d1) <= 1e-12 * scale
            or fabs(d2) <= 1e-12 * scale
            or fabs(d3) <= 1e-12 * scale
        ):
            return 1
    elif kind == 3:
        pb = hypot(px - bx, py - by)
        pc = hypot(px - cx, py - cy)
        pa = hypot(px - ax, py - ay)
        d1 = pb - pc
        d2 = pc - pa
        d3 = pa - pb
        if fabs(d1) <= 1e-12 * scale or fabs(d1) >= a - 1e-12 * scale:
            return 1
        if fabs(d2) <= 1e-12 * scale or fabs(d2) >= b - 1e-12 * scale:
            return 1
        if fabs(d3) <= 1e-12 * scale or fabs(d3) >= c - 1e-12 * scale:
            return 1
    else:
        return -1
    cdef double f1x[3]
    cdef double f1y[3]
    cdef double f2x[3]
    cdef double f2y[3]
    cdef double dd[3]
    cdef double ss[3]
    f1x[0] = bx; f1y[0] = by; f2x[0] = cx; f2y[0] = cy; dd[0] = d1; ss[0] = a
    f1x[1] = cx; f1y[1] = cy; f2x[1] = ax; f2y[1] = ay; dd[1] = d2; ss[1] = b
    f1x[2] = ax; f1y[2] = ay; f2x[2] = bx; f2y[2] = by; dd[2] = d3; ss[2] = c
    cdef int i
    cdef double mx, my, ux, uy, h
    for i in range(3):
        mx = (f1x[i] + f2x[i]) / 2.0
        my = (f1y[i] + f2y[i]) / 2.0
        ux = (f1x[i] - f2x[i]) / ss[i]
        uy = (f1y[i] - f2y[i]) / ss[i]
        h = dd[i] / 2.0
        out[4 * i] = mx + h * ux
        out[4 * i + 1] = my + h * uy
        out[4 * i + 2] = mx - h * ux
        out[4 * i + 3] = my - h * uy
    return 0


def triad_vertices12(double ax, double ay, double bx, double by,
                     double cx, double cy, int kind, double px, double py):
    cdef double out[12]
    cdef int st = _vertices12(ax, ay, bx, by, cx, cy, kind, px, py, out)
    if st == 1:
        return None
    if st == -1:
        raise ValueError(f"unknown kind code {kind}")
    return tuple(out[i] for i in range(12))


def fit5_cofactor(xs, ys):
    cdef double cxs[5]
    cdef double cys[5]
    cdef double co[6]
    cdef int i
    for i in range(5):
        cxs[i] = xs[i]
        cys[i] = ys[i]
    _fit5(cxs, cys, co)
    return (co[0], co[1], co[2], co[3], co[4], co[5])


def classify_code(co):
    cdef double c[6]
    cdef int i
    for i in range(6):
        c[i] = co[i]
    return _classify(c)


def conic_eval(co, double x, double y):
    cdef double c[6]
    cdef int i
    for i in range(6):
        c[i] = co[i]
    return _conic_eval(c, x, y)


def conic_residual(co, double x, double y):
    cdef double c[6]
    cdef int i
    for i in range(6):
        c[i] = co[i]
    cdef double n = _frobenius(c)
    if n == 0.0:
        return INFINITY
    return fabs(_conic_eval(c, x, y)) / (n * (x * x + y * y + 1.0))


def frobenius(co):
    cdef double c[6]
    cdef int i
    for i in range(6):
        c[i] = co[i]
    return _frobenius(c)


def mat_det(co):
    cdef double c[6]
    cdef int i
    for i in range(6):
        c[i] = co[i]
    return _mat_det(c)


def six_point(double ax, double ay, double bx, double by,
              double cx, double cy, int kind, double px, double py):
    """(status, class_code, residual6, det_normalized, coeffs) as in py.py."""
    cdef double v[12]
    cdef double xs[5]
    cdef double ys[5]
    cdef double co[6]
    cdef int st = _vertices12(ax, ay, bx, by, cx, cy, kind, px, py, v)
    cdef int i
    if st == -1:
        raise ValueError(f"unknown kind code {kind}")
    if st:
        return (1, CLASS_FAILED, INFINITY, 0.0, None)
    for i in range(5):
        xs[i] = v[2 * i]
        ys[i] = v[2 * i + 1]
    _fit5(xs, ys, co)
    cdef double n = _frobenius(co)
    cdef bint ok = n != 0.0
    for i in range(6):
        if not isfinite(co[i]):
            ok = False
    if not ok:
        return (1, CLASS_FAILED, INFINITY, 0.0, None)
    cdef double res6 = fabs(_conic_eval(co, v[10], v[11])) / (
        n * (v[10] * v[10] + v[11] * v[11] + 1.0)
    )
    cdef double detn = _mat_det(co) / (n * n * n)
    return (
        0,
        _classify(co),
        res6,
        detn,
        (co[0], co[1], co[2], co[3], co[4], co[5]),
    )
