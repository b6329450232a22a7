"""Kernel backend selection.

Imports the compiled extension (triconic.kernels._fast) when present,
falling back to the pure-Python twin.  Set TRICONIC_KERNEL=py or =c to
force a backend; forcing "c" raises if the extension is missing.

Exports: six_point, triad_vertices12, fit5_cofactor, classify_code,
conic_residual, conic_eval, plus the CLASS_*/KIND_* code constants and
BACKEND ("c" or "py").
"""

import os

from . import py as _py

_choice = os.environ.get("TRICONIC_KERNEL", "auto")

if _choice == "py":
    _impl = _py
    BACKEND = "py"
elif _choice in ("auto", "c"):
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
        _impl = _py
        BACKEND = "py"
else:
    raise ValueError(f"TRICONIC_KERNEL must be auto|c|py, got {_choice!r}")

# Code constants are defined once, in the pure module.
CLASS_CIRCLE = _py.CLASS_CIRCLE
CLASS_ELLIPSE = _py.CLASS_ELLIPSE
CLASS_PARABOLA = _py.CLASS_PARABOLA
CLASS_HYPERBOLA = _py.CLASS_HYPERBOLA
CLASS_RECTANGULAR_HYPERBOLA = _py.CLASS_RECTANGULAR_HYPERBOLA
CLASS_DEGENERATE_TWO_LINES = _py.CLASS_DEGENERATE_TWO_LINES
CLASS_DEGENERATE_PARALLEL_LINES = _py.CLASS_DEGENERATE_PARALLEL_LINES
CLASS_DEGENERATE_POINT = _py.CLASS_DEGENERATE_POINT
CLASS_FAILED = _py.CLASS_FAILED

KIND_V_ELLIPSE = _py.KIND_V_ELLIPSE
KIND_P_ELLIPSE = _py.KIND_P_ELLIPSE
KIND_V_HYPERBOLA = _py.KIND_V_HYPERBOLA
KIND_P_HYPERBOLA = _py.KIND_P_HYPERBOLA

KIND_CODES = {
    "v_ellipse": KIND_V_ELLIPSE,
    "p_ellipse": KIND_P_ELLIPSE,
    "v_hyperbola": KIND_V_HYPERBOLA,
    "p_hyperbola": KIND_P_HYPERBOLA,
}

CLASS_NAMES = {
    CLASS_CIRCLE: "circle",
    CLASS_ELLIPSE: "ellipse",
    CLASS_PARABOLA: "parabola",
    CLASS_HYPERBOLA: "hyperbola",
    CLASS_RECTANGULAR_HYPERBOLA: "rectangular_hyperbola",
    CLASS_DEGENERATE_TWO_LINES: "degenerate_two_lines",
    CLASS_DEGENERATE_PARALLEL_LINES: "degenerate_parallel_lines",
    CLASS_DEGENERATE_POINT: "degenerate_point",
    CLASS_FAILED: "degenerate",
}

six_point = _impl.six_point
triad_vertices12 = _impl.triad_vertices12
fit5_cofactor = _impl.fit5_cofactor
classify_code = _impl.classify_code
conic_residual = _impl.conic_residual
conic_eval = _impl.conic_eval

pure = _py
