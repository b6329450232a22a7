import math

import numpy as np
import pytest

from triconic import kernels
from triconic.conic import Conic, classify, fit_conic_5pts
from triconic.geom import Point2
from triconic.kernels import py as pyk

try:
    from triconic.kernels import _fast as ck
except ImportError:
    ck = None

needs_compiled = pytest.mark.skipif(ck is None, reason="compiled kernel not built")

_CLASS_TO_NAME = {
    "circle": pyk.CLASS_CIRCLE,
    "ellipse": pyk.CLASS_ELLIPSE,
    "parabola": pyk.CLASS_PARABOLA,
    "hyperbola": pyk.CLASS_HYPERBOLA,
    "rectangular_hyperbola": pyk.CLASS_RECTANGULAR_HYPERBOLA,
    "degenerate_two_lines": pyk.CLASS_DEGENERATE_TWO_LINES,
    "degenerate_parallel_lines": pyk.CLASS_DEGENERATE_PARALLEL_LINES,
    "degenerate_point": pyk.CLASS_DEGENERATE_POINT,
}


def test_det5_matches_numpy(rng):
    for _ in range(200):
        m = rng.uniform(-2, 2, (5, 5))
        assert pyk.det5(m.tolist()) == pytest.approx(np.linalg.det(m), rel=1e-9, abs=1e-12)


def test_fit5_cofactor_matches_svd(rng):
    for _ in range(100):
        pts = rng.uniform(-1, 2, (5, 2))
        co = pyk.fit5_cofactor(pts[:, 0], pts[:, 1])
        if pyk.frobenius(co) < 1e-12:
            continue
        svd = fit_conic_5pts([Point2(*p) for p in pts])
        cof = Conic.from_coeffs(co)
        assert np.allclose(cof.m, svd.m, atol=1e-8) or np.allclose(
            cof.m, -svd.m, atol=1e-8
        )


def test_classify_code_matches_module(rng):
    for _ in range(300):
        co = tuple(rng.uniform(-1, 1, 6))
        if pyk.frobenius(co) < 1e-9:
            continue
        want = classify(Conic.from_coeffs(co)).value
        assert pyk.classify_code(co) == _CLASS_TO_NAME[want]


def test_six_point_matches_module(rng, t_generic):
    from triconic.triads import build_triad, six_point_conic

    t = t_generic
    for _ in range(50):
        px, py = rng.uniform(-0.5, 1.5, 2)
        st, code, res6, detn, co = pyk.six_point(
            t.a.x, t.a.y, t.b.x, t.b.y, t.c.x, t.c.y, pyk.KIND_P_ELLIPSE, px, py
        )
        if st:
            continue
        rep = six_point_conic(build_triad(t, "p_ellipse", Point2(px, py)))
        assert code == _CLASS_TO_NAME[rep.conic_class.value]
        assert res6 <= 1e-10


@needs_compiled
def test_backend_parity(rng):
    worst = 0.0
    for _ in range(1500):
        vals = rng.uniform(-1, 2, 8)
        kind = int(rng.integers(0, 4))
        rp = pyk.six_point(*vals[:6], kind, vals[6], vals[7])
        rf = ck.six_point(*vals[:6], kind, vals[6], vals[7])
        assert rp[0] == rf[0]
        if rp[0]:
            continue
        assert rp[1] == rf[1]
        worst = max(
            worst,
            abs(rp[2] - rf[2]),
            abs(rp[3] - rf[3]),
            max(abs(a - b) for a, b in zip(rp[4], rf[4])),
        )
    # Same algorithm; only compiler re-association separates them.
    assert worst < 1e-10


@needs_compiled
def test_backend_vertices_identical(rng):
    for _ in range(300):
        vals = rng.uniform(-1, 2, 8)
        kind = int(rng.integers(0, 4))
        vp = pyk.triad_vertices12(*vals[:6], kind, vals[6], vals[7])
        vf = ck.triad_vertices12(*vals[:6], kind, vals[6], vals[7])
        assert (vp is None) == (vf is None)
        if vp is None:
            continue
        assert vp == pytest.approx(vf, abs=1e-13)


def test_backend_selection_env():
    assert kernels.BACKEND in ("c", "py")
    assert kernels.KIND_CODES["v_ellipse"] == pyk.KIND_V_ELLIPSE
    assert kernels.CLASS_NAMES[pyk.CLASS_FAILED] == "degenerate"
