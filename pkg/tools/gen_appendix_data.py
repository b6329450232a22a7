#!/usr/bin/env python3
"""One-time generator for the appendix term-list data files.

Each block is expanded from its factored source form into a flat list of
integer-coefficient monomials over a fixed variable order, then written as
JSON under src/triconic/data/appendix/.  Quotient blocks are cleared of
denominators projectively; the +/- vertex block is split into sign parts.
After generation the files are frozen by checksum in the test suite; rerun
only to regenerate from scratch.
"""

import json
import pathlib
from fractions import Fraction


class Poly:
    """Sparse multivariate polynomial over a fixed variable tuple."""

    def __init__(self, varnames, terms=None):
        self.varnames = tuple(varnames)
        self.terms = dict(terms or {})  # exponent tuple -> Fraction

    @classmethod
    def var(cls, varnames, name):
        e = [0] * len(varnames)
        e[list(varnames).index(name)] = 1
        return cls(varnames, {tuple(e): Fraction(1)})

    @classmethod
    def const(cls, varnames, value):
        return cls(varnames, {tuple([0] * len(varnames)): Fraction(value)})

    def _clean(self):
        self.terms = {e: c for e, c in self.terms.items() if c != 0}
        return self

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.varnames, out)._clean()

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.varnames, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.varnames, out)._clean()

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0 or int(n) != n:
            raise ValueError("only nonnegative integer powers")
        out = Poly.const(self.varnames, 1)
        base = self
        n = int(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(self.varnames, other)

    def rows(self):
        out = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append([int(c), *e])
        return out


def build_env(varnames):
    return {name: Poly.var(varnames, name) for name in varnames}


def expand(expr, varnames):
    env = build_env(varnames)
    src = expr.replace("\n", "").replace("^", "**")
    return eval(src, {"__builtins__": {}}, env)


# --- source expressions -----------------------------------------------------

A_ELLIPSE_VARS = ("a", "b", "c", "x", "y", "z")
A_ELLIPSE = """
8*b^4*c^4*(a^2+b^2-c^2)*(a^2-b^2+c^2)*(a^6*b^4-3*a^4*b^6+3*a^2*b^8-b^10+3*a^4*b^4*c^2-
6*a^2*b^6*c^2+3*b^8*c^2+a^6*c^4+3*a^4*b^2*c^4+6*a^2*b^4*c^4-2*b^6*c^4-3*a^4*c^6-
6*a^2*b^2*c^6-2*b^4*c^6+3*a^2*c^8+3*b^2*c^8-c^10)*x^2+4*b^2*c^4*(a^2+b^2-c^2)^2*(a^2-
b^2+c^2)*(a^8*b^2-2*a^6*b^4+2*a^2*b^8-b^10-a^8*c^2-2*a^6*b^2*c^2+10*a^4*b^4*c^2-
10*a^2*b^6*c^2+3*b^8*c^2+4*a^6*c^4+4*a^4*b^2*c^4+10*a^2*b^4*c^4-2*b^6*c^4-6*a^4*c^6-
6*a^2*b^2*c^6-2*b^4*c^6+4*a^2*c^8+3*b^2*c^8-c^10)*x*y+a^2*c^4*(a^2-b^2-c^2)*(a^2+b^2-
c^2)*(a^12-7*a^8*b^4+16*a^6*b^6-21*a^4*b^8+16*a^2*b^10-5*b^12-6*a^10*c^2-4*a^8*b^2*c^2+
12*a^6*b^4*c^2+24*a^4*b^6*c^2-38*a^2*b^8*c^2+12*b^10*c^2+15*a^8*c^4+16*a^6*b^2*c^4+
6*a^4*b^4*c^4+32*a^2*b^6*c^4-5*b^8*c^4-20*a^6*c^6-24*a^4*b^2*c^6-20*a^2*b^4*c^6-8*b^6*c^6+
15*a^4*c^8+16*a^2*b^2*c^8+9*b^4*c^8-6*a^2*c^10-4*b^2*c^10+c^12)*y^2-4*b^4*c^2*(a^2+b^2-
c^2)*(a^2-b^2+c^2)^2*(a^8*b^2-4*a^6*b^4+6*a^4*b^6-4*a^2*b^8+b^10-a^8*c^2+2*a^6*b^2*c^2-
4*a^4*b^4*c^2+6*a^2*b^6*c^2-3*b^8*c^2+2*a^6*c^4-10*a^4*b^2*c^4-10*a^2*b^4*c^4+2*b^6*c^4+
10*a^2*b^2*c^6+2*b^4*c^6-2*a^2*c^8-3*b^2*c^8+c^10)*x*z-2*a^2*b^2*c^2*(a^2-b^2-c^2)*(a^2+
b^2-c^2)*(a^2-b^2+c^2)*(a^10-3*a^8*b^2+2*a^6*b^4+2*a^4*b^6-3*a^2*b^8+b^10-3*a^8*c^2+
8*a^6*b^2*c^2-14*a^4*b^4*c^2+16*a^2*b^6*c^2-7*b^8*c^2+2*a^6*c^4-14*a^4*b^2*c^4-26*a^2*b^4*c^4+
6*b^6*c^4+2*a^4*c^6+16*a^2*b^2*c^6+6*b^4*c^6-3*a^2*c^8-7*b^2*c^8+c^10)*y*z+a^2*b^4*(a^2-b^2-
c^2)*(a^2-b^2+c^2)*(a^12-6*a^10*b^2+15*a^8*b^4-20*a^6*b^6+15*a^4*b^8-6*a^2*b^10+b^12-
4*a^8*b^2*c^2+16*a^6*b^4*c^2-24*a^4*b^6*c^2+16*a^2*b^8*c^2-4*b^10*c^2-7*a^8*c^4+12*a^6*b^2*c^4+
6*a^4*b^4*c^4-20*a^2*b^6*c^4+9*b^8*c^4+16*a^6*c^6+24*a^4*b^2*c^6+32*a^2*b^4*c^6-8*b^6*c^6-
21*a^4*c^8-38*a^2*b^2*c^8-5*b^4*c^8+16*a^2*c^10+12*b^2*c^10-5*c^12)*z^2
"""

MAJOR_VERTICES_VARS = ("a", "b", "c", "S", "rt")
_MV_BIG = (
    "(a^4*b^2-2*a^2*b^4+b^6+a^4*c^2+4*a^2*b^2*c^2-b^4*c^2-2*a^2*c^4-b^2*c^4+c^6)"
)
MV_NUM = "a*(a^2-b^2-c^2)*((b^2-c^2)*" + _MV_BIG + " {sgn} 2*a^3*S*rt)"
MV_DEN = "a*" + _MV_BIG + " {sgn} 2*(b^2-c^2)*S*rt"
MV_SECOND = "b^2*(-a^2+b^2-c^2)"
MV_THIRD = "-(c^2*(-a^2-b^2+c^2))"
# Radicand of rt, used by the evaluator (S is twice the reference area).
RT_RADICAND_VARS = ("a", "b", "c")
RT_RADICAND = "a^6-3*a^2*b^4+2*b^6+6*a^2*b^2*c^2-2*b^4*c^2-3*a^2*c^4-2*b^2*c^4+2*c^6"

X3PRIME_VARS = ("a", "b", "c")
X3PRIME = """
(a^14-5*a^12*b^2+9*a^10*b^4-5*a^8*b^6-5*a^6*b^8+9*a^4*b^10-5*a^2*b^12+b^14-5*a^12*c^2+10*a^10*b^2*c^2-
13*a^8*b^4*c^2+28*a^6*b^6*c^2-31*a^4*b^8*c^2+10*a^2*b^10*c^2+b^12*c^2+9*a^10*c^4-13*a^8*b^2*c^4-
30*a^6*b^4*c^4+22*a^4*b^6*c^4+21*a^2*b^8*c^4-9*b^10*c^4-5*a^8*c^6+28*a^6*b^2*c^6+22*a^4*b^4*c^6-
52*a^2*b^6*c^6+7*b^8*c^6-5*a^6*c^8-31*a^4*b^2*c^8+21*a^2*b^4*c^8+7*b^6*c^8+9*a^4*c^10+10*a^2*b^2*c^10-
9*b^4*c^10-5*a^2*c^12+b^2*c^12+c^14)*a^2
"""

PHYP_MEMBER_VARS = ("a", "b", "c", "La", "p", "q", "r", "x", "y", "z")
PHYP_MEMBER = """
(2*(b^2-c^2-La^2)*p*q+(a^2-La^2)*q^2-2*(b^2-c^2+La^2)*p*r-2*(a^2+La^2)*q*r+(a^2-La^2)*r^2)*x^2-
2*(b^2-c^2-La^2)*p^2*x*y-(a^2-La^2)*p^2*y^2+2*(b^2-c^2+La^2)*p^2*x*z+2*(a^2+La^2)*p^2*y*z-
(a^2-La^2)*p^2*z^2
"""

PSTAR_CONIC_VARS = ("a", "b", "c", "La", "Lb", "Lc", "x", "y", "z")
# Source form has the per-side quotients 2(s^2+L^2)/(s^2-L^2); denominators
# cleared by multiplying through by (a^2-La^2)(b^2-Lb^2)(c^2-Lc^2).
PSTAR_CONIC = """
(a^2-La^2)*(b^2-Lb^2)*(c^2-Lc^2)*(x^2+y^2+z^2)
- 2*(a^2+La^2)*(b^2-Lb^2)*(c^2-Lc^2)*y*z
- 2*(b^2+Lb^2)*(a^2-La^2)*(c^2-Lc^2)*z*x
- 2*(c^2+Lc^2)*(a^2-La^2)*(b^2-Lb^2)*x*y
"""

X5452_VARS = ("a", "b", "c", "La", "Lb", "Lc")
# First coordinate, cleared of denominators by the common projective factor
# ((a^2-La^2)(b^2-Lb^2)(c^2-Lc^2))^2; the other coordinates follow cyclically.
X5452 = """
a^2*(b^2-Lb^2)*(c^2-Lc^2)*(
    -2*La^2*(b^2-Lb^2)*(c^2-Lc^2)
    + (b^2+Lb^2)*(a^2-La^2)*(c^2-Lc^2)
    + (c^2+Lc^2)*(a^2-La^2)*(b^2-Lb^2)
)
"""


def main():
    outdir = pathlib.Path(__file__).resolve().parents[1] / "src/triconic/data/appendix"
    outdir.mkdir(parents=True, exist_ok=True)

    def write(name, variables, polys, notes):
        payload = {
            "name": name,
            "variables": list(variables),
            "notes": notes,
            "polys": {k: v.rows() for k, v in polys.items()},
        }
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(payload, indent=None, separators=(",", ":")) + "\n")
        nterms = {k: len(v.rows()) for k, v in polys.items()}
        print(f"wrote {path.name}: {nterms}")

    write(
        "a_ellipse",
        A_ELLIPSE_VARS,
        {"main": expand(A_ELLIPSE, A_ELLIPSE_VARS)},
        "Barycentric equation of the anticevian A-ellipse; zero on the curve.",
    )
    mv = {
        "num_plus": expand(MV_NUM.format(sgn="+"), MAJOR_VERTICES_VARS),
        "num_minus": expand(MV_NUM.format(sgn="-"), MAJOR_VERTICES_VARS),
        "den_plus": expand(MV_DEN.format(sgn="+"), MAJOR_VERTICES_VARS),
        "den_minus": expand(MV_DEN.format(sgn="-"), MAJOR_VERTICES_VARS),
        "second": expand(MV_SECOND, MAJOR_VERTICES_VARS),
        "third": expand(MV_THIRD, MAJOR_VERTICES_VARS),
        "rt_radicand": expand(RT_RADICAND, MAJOR_VERTICES_VARS),
    }
    write(
        "major_vertices",
        MAJOR_VERTICES_VARS,
        mv,
        "Major vertices of the anticevian A-ellipse: [num/den, second, third] "
        "for each sign branch; S is twice the reference area, rt the root of "
        "rt_radicand.",
    )
    write(
        "x3prime_center",
        X3PRIME_VARS,
        {"f": expand(X3PRIME, X3PRIME_VARS)},
        "First barycentric of the anticevian six-point circle center; "
        "cyclic for the others.",
    )
    write(
        "phyp_member",
        PHYP_MEMBER_VARS,
        {"main": expand(PHYP_MEMBER, PHYP_MEMBER_VARS)},
        "Barycentric equation of one P-hyperbola; (p,q,r) are the "
        "barycentrics of P, La = |PB|-|PC|.",
    )
    write(
        "pstar_conic",
        PSTAR_CONIC_VARS,
        {"main": expand(PSTAR_CONIC, PSTAR_CONIC_VARS)},
        "Six-point conic of a P-hyperbola triad, denominators cleared.",
    )
    write(
        "x5452_coordinate",
        X5452_VARS,
        {"g": expand(X5452, X5452_VARS)},
        "First barycentric of the six-point conic center, denominators "
        "cleared by a common projective factor; cyclic for the others.",
    )


if __name__ == "__main__":
    main()
