"""Bridge to sympy for factorization over Q."""
from __future__ import annotations

from fractions import Fraction

import sympy

from .exactkernel import BiPoly, Poly

_t, _y = sympy.symbols("t y")


def _q(c) -> sympy.Rational:
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def to_sympy_poly(p: Poly) -> sympy.Poly:
    return sympy.Poly(list(reversed([_q(c) for c in p.coeffs])) or [0], _t, domain="QQ")


def from_sympy_poly(sp: sympy.Poly) -> Poly:
    return Poly(reversed([_frac(c) for c in sp.all_coeffs()]))


def factor_univariate(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of p over Q with multiplicities."""
    if p.degree < 1:
        return []
    _, facs = to_sympy_poly(p).factor_list()
    return sorted(
        ((from_sympy_poly(f).monic(), m) for f, m in facs),
        key=lambda fm: (fm[0].degree, [c for c in fm[0].coeffs]),
    )


def bipoly_to_sympy(F: BiPoly) -> sympy.Poly:
    expr = sum((_q(c) * _t**i * _y**j for (i, j), c in F.terms.items()), sympy.Integer(0))
    return sympy.Poly(expr, _t, _y, domain="QQ")


def bipoly_from_sympy(sp: sympy.Poly) -> BiPoly:
    return BiPoly({(i, j): _frac(c) for (i, j), c in sp.terms()})


def factor_bivariate(F: BiPoly) -> list[tuple[BiPoly, int]]:
    """Irreducible factors over Q[t, y] of positive y-degree, normalized monic in y
    when the leading y-coefficient is constant."""
    _, facs = bipoly_to_sympy(F).factor_list()
    out = []
    for f, m in facs:
        G = bipoly_from_sympy(f)
        if G.deg_y < 1:
            continue
        lead = G.y_coeffs()[-1]
        if lead.degree == 0:
            G = G * (1 / lead.coeffs[0])
        out.append((G, m))
    out.sort(key=lambda gm: (gm[0].deg_y, gm[0].to_string()))
    return out
