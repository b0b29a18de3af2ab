"""Hitchin map, spectral curves and Higgs stability.

Sign convention: det(y Id - Phi) = y^r + a_1 y^(r-1) + ... + a_r with
a_i = c_i(t) (dt/q)^i, so c_i is a polynomial of degree <= i(n - 2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError
from .exactkernel import (
    BiPoly,
    Poly,
    ResidueField,
    poly_gcd,
    poly_mat_kernel,
    rat_str,
    resultant_y,
)
from .higgsfield import HiggsField
from .parabolic import SubbundleMap, induced_pdeg, pdeg_slope, poly_matmul, saturate
from .projline import MarkedCurve, h_line


@dataclass(frozen=True)
class HitchinPoint:
    curve: MarkedCurve
    coeffs: tuple[Poly, ...]  # c_1, ..., c_r

    def __post_init__(self):
        n = self.curve.n
        for i, c in enumerate(self.coeffs, start=1):
            if c.degree > i * (n - 2):
                raise InvalidInputError(f"deg c_{i} = {c.degree} exceeds {i * (n - 2)}")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> dict:
        return {"c": [c.to_json() for c in self.coeffs]}


def _identity_poly(r: int) -> list[list[Poly]]:
    return [[Poly([1]) if i == j else Poly() for j in range(r)] for i in range(r)]


def hitchin_map(phi: HiggsField) -> HitchinPoint:
    """Faddeev-LeVerrier over Q[t]."""
    H = [list(row) for row in phi.numerator]
    r = len(H)
    M = _identity_poly(r)
    cs: list[Poly] = []
    for k in range(1, r + 1):
        HM = poly_matmul(H, M)
        c = sum((HM[i][i] for i in range(r)), Poly()) * Fraction(-1, k)
        cs.append(c)
        M = [[HM[i][j] + (c if i == j else Poly()) for j in range(r)] for i in range(r)]
    return HitchinPoint(phi.curve, tuple(cs))


def base_dims(g: int, r: int, n: int) -> dict:
    """Dimensions of the Hitchin base, its Casimir-free part, and the quotient."""
    if n < 1:
        raise InvalidInputError("at least one marked point is required")
    dim_H = (2 * g - 2 + n) * r * (r + 1) // 2 + r * (1 - g)
    dim_H0 = (2 * g - 2) * r * (r + 1) // 2 + n * r * (r - 1) // 2 + r * (1 - g) + 1
    out = {"dim_H": dim_H, "dim_H0": dim_H0, "dim_quotient": n * r - 1}
    if g == 0:
        sum_H = sum(h_line(i * (n - 2))[0] for i in range(1, r + 1))
        # H0: sections of K^i((i-1)D), i.e. O(-2i + (i-1)n)
        sum_H0 = sum(h_line(-2 * i + (i - 1) * n)[0] for i in range(1, r + 1))
        out["line_sum_H"] = sum_H
        out["line_sum_H0"] = sum_H0
        out["consistent"] = sum_H == dim_H and sum_H0 == dim_H0
    return out


def casimir_project(s: HitchinPoint) -> dict[Fraction, Poly]:
    """Per-point residue characteristic polynomials y^r + sum c_i(p)/q'(p)^i y^(r-i)."""
    r = s.rank
    out = {}
    for p in s.curve.points:
        dq = s.curve.dq(p)
        coeffs = [Fraction(0)] * (r + 1)
        coeffs[r] = Fraction(1)
        for i, c in enumerate(s.coeffs, start=1):
            coeffs[r - i] = c(p) / dq**i
        out[p] = Poly(coeffs)
    return out


@dataclass(frozen=True)
class SpectralCurve:
    curve: MarkedCurve
    F: BiPoly
    G: BiPoly  # infinity chart in (s, z), stored with s as the first variable
    ram_degree: int | None

    @property
    def rank(self) -> int:
        return self.F.deg_y


def spectral_build(s: HitchinPoint) -> SpectralCurve:
    r, w = s.rank, s.curve.n - 2
    ys = [Poly() for _ in range(r + 1)]
    ys[r] = Poly([1])
    for i, c in enumerate(s.coeffs, start=1):
        ys[r - i] = c
    F = BiPoly.from_y_coeffs(ys)
    terms = {(0, r): Fraction(1)}
    for i, c in enumerate(s.coeffs, start=1):
        for k, a in enumerate(c.coeffs):
            if a:
                terms[(i * w - k, r - i)] = a
    G = BiPoly(terms)
    if r == 0:
        return SpectralCurve(s.curve, F, G, None)
    d = resultant_y(F, F.diff_y())
    return SpectralCurve(s.curve, F, G, d.degree if d else None)


@dataclass
class SmoothnessReport:
    smooth: bool
    genus: int | None = None
    branch_count: int | None = None
    riemann_hurwitz: bool | None = None
    singular_points: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "smooth": self.smooth,
            "certificate": self.certificate,
        }
        if self.smooth:
            out.update(genus=self.genus, branch_count=self.branch_count,
                       riemann_hurwitz=self.riemann_hurwitz)
        else:
            out["singular_points"] = [[rat_str(a), rat_str(b)] for a, b in self.singular_points]
            if self.singular_points:
                out["singular_point"] = out["singular_points"][0]
        return out


def _low_order(p: Poly) -> int:
    return next(k for k, c in enumerate(p.coeffs) if c)


def spectral_genus(r: int, n: int, g: int = 0) -> int:
    return r * r * (g - 1) + r * n * (r - 1) // 2 + 1


def spectral_smooth(X: SpectralCurve) -> SmoothnessReport:
    """Decide smoothness of the spectral curve over the algebraic closure."""
    from ._symbolic import factor_univariate

    F, r, n = X.F, X.rank, X.curve.n
    if r == 1:
        return SmoothnessReport(True, spectral_genus(1, n), 0, True,
                                certificate={"reason": "rank one: section of K(D)"})
    Fy, Ft = F.diff_y(), F.diff_t()
    d = resultant_y(F, Fy)
    if not d:
        return SmoothnessReport(False, certificate={
            "reason": "discriminant vanishes identically (non-reduced curve)"})
    singular = []
    bad_factors = []
    for pi, mult in factor_univariate(d):
        K = ResidueField(pi)
        g = K.poly_gcd(F.y_coeffs(), Fy.y_coeffs(), Ft.y_coeffs() if Ft else [])
        if len(g) > 1:
            bad_factors.append(pi.to_json())
            if pi.degree == 1 and len(g) == 2:
                t0 = -pi.coeffs[0]
                y0 = -g[0].coeffs[0] if g[0] else Fraction(0)
                singular.append((t0, y0))
    # infinity chart: G(0, z), G_z(0, z), G_s(0, z)
    G = X.G
    g0 = G.at_t(0)
    gz = G.diff_y().at_t(0)
    gs = G.diff_t().at_t(0)
    ginf = poly_gcd(poly_gcd(g0, gz), gs)
    cert = {"discriminant": d.to_json(), "singular_factors": bad_factors,
            "singular_at_infinity": ginf.degree > 0}
    if bad_factors or ginf.degree > 0:
        return SmoothnessReport(False, singular_points=singular, certificate=cert)
    dG = resultant_y(G, G.diff_y())
    branch = d.degree + _low_order(dG)
    genus = spectral_genus(r, n)
    rh = 2 * genus - 2 == -2 * r + branch
    cert["discriminant_squarefree"] = poly_gcd(d, d.derivative()).degree == 0
    return SmoothnessReport(True, genus, branch, rh, certificate=cert)


# ----------------------------------------------------- invariant subbundles


def _apply_poly(G: BiPoly, H: list[list[Poly]]) -> list[list[Poly]]:
    """Numerator of G(Phi) = sum_k g_k(t) H^k."""
    r = len(H)
    out = [[Poly() for _ in range(r)] for _ in range(r)]
    power = _identity_poly(r)
    for k, gk in enumerate(G.y_coeffs()):
        if k:
            power = poly_matmul(power, H)
        if gk:
            out = [[out[i][j] + power[i][j] * gk for j in range(r)] for i in range(r)]
    return out


def _same_subbundle(A: SubbundleMap, B: SubbundleMap) -> bool:
    if A.rank != B.rank:
        return False
    r = len(A.matrix)
    mat = [list(A.matrix[i]) + list(B.matrix[i]) for i in range(r)]
    return 2 * A.rank - len(poly_mat_kernel(mat, 2 * A.rank)) == A.rank


def invariant_subbundles(phi: HiggsField, spectral: SmoothnessReport | None = None):
    """Phi-invariant subbundles from y-factorizations of the spectral polynomial."""
    from ._symbolic import factor_bivariate

    s = hitchin_map(phi)
    X = spectral_build(s)
    if spectral is None:
        spectral = spectral_smooth(X)
    if spectral.smooth:
        return []
    r = phi.rank
    H = [list(row) for row in phi.numerator]
    facs = factor_bivariate(X.F)
    found: list[SubbundleMap] = []

    def add(S: SubbundleMap):
        if not any(_same_subbundle(S, T) for T in found):
            found.append(S)

    for exps in itertools.product(*(range(m + 1) for _, m in facs)):
        deg = sum(e * f.deg_y for (f, _), e in zip(facs, exps))
        if deg == 0 or deg == r:
            continue
        G = BiPoly({(0, 0): 1})
        for (f, _), e in zip(facs, exps):
            for _ in range(e):
                G = G * f
        M = _apply_poly(G, H)
        kern = poly_mat_kernel(M, r)
        if len(kern) == r:
            for k in range(1, r):
                cols = [[Poly([1]) if i == j else Poly() for j in range(k)] for i in range(r)]
                add(saturate(cols, phi.bundle.splitting))
        elif kern:
            add(saturate([[v[i] for v in kern] for i in range(r)], phi.bundle.splitting))
    found.sort(key=lambda S: (S.rank, -S.degree))
    return [(S, induced_pdeg(phi.bundle, S)) for S in found]


@dataclass
class HiggsStability:
    verdict: str  # stable | stable_relative_to_enumeration | semistable | unstable
    slope: Fraction
    witness: SubbundleMap | None = None
    witness_slope: Fraction | None = None
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "slope": rat_str(self.slope),
            "witness": None if self.witness is None else self.witness.to_json(),
            "witness_slope": None if self.witness_slope is None else rat_str(self.witness_slope),
            "certificate": self.certificate,
        }


def higgs_stable(phi: HiggsField) -> HiggsStability:
    _, slope = pdeg_slope(phi.bundle)
    rep = spectral_smooth(spectral_build(hitchin_map(phi)))
    if rep.smooth:
        return HiggsStability("stable", slope, certificate={"reason": "smooth spectral curve"})
    subs = invariant_subbundles(phi, rep)
    slopes = [(pd / S.rank, S) for S, pd in subs]
    cert = {"reason": "invariant subbundles from spectral factors",
            "candidates": [[S.to_json(), rat_str(v)] for v, S in slopes]}
    if not slopes:
        return HiggsStability("stable_relative_to_enumeration", slope, certificate=cert)
    best, wit = max(slopes, key=lambda vs: vs[0])
    if best > slope:
        return HiggsStability("unstable", slope, wit, best, cert)
    if best == slope:
        return HiggsStability("semistable", slope, wit, best, cert)
    return HiggsStability("stable_relative_to_enumeration", slope, certificate=cert)
