"""Cech (hyper)cohomology on the cover U0 = {t finite}, U1 = {t != 0}.

Cochains are matrices of Laurent polynomials in the U0 frame, truncated to
exponent windows.  An End-shaped sheaf has entry (i, j) twisted by
a_i - a_j + extra, so on U1 the entry may carry exponents up to that twist.
Point conditions (parabolic or strongly parabolic) are imposed on every
cochain, since all marked points lie on the overlap.

Two-term complexes [A -> B] with d = sign * [., Phi] are handled through the
total complex
    D0(u0, u1) = (u1 - u0; d u0, d u1),   cocycles (a; v0, v1) with v1 - v0 = d a.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InvalidInputError, StabilizationError, UnstableError
from .exactkernel import Laurent, Poly, mat_kernel, mat_rank, sparse_kernel
from .higgsfield import HiggsField, residue_matrix, validate
from .parabolic import PARABOLIC, STRONGLY, ParabolicBundle
from .projline import residue_at_zero

TANGENT = "tangent"
COTANGENT = "cotangent"
MAX_RETRIES = 3


@dataclass(frozen=True)
class ConstrainedSheaf:
    bundle: ParabolicBundle
    variant: str  # parabolic | strongly_parabolic | none
    extra: int = 0

    def twist(self, i: int, j: int) -> int:
        a = self.bundle.splitting
        return a[i] - a[j] + self.extra

    def max_twist(self) -> int:
        r = self.bundle.rank
        return max(abs(self.twist(i, j)) for i in range(r) for j in range(r))


class Layout:
    """Coordinates (i, j, e) of an End-shaped Laurent matrix with per-entry windows."""

    def __init__(self, r: int, ranges):
        self.r = r
        self.keys: list[tuple[int, int, int]] = []
        for i in range(r):
            for j in range(r):
                lo, hi = ranges(i, j)
                self.keys.extend((i, j, e) for e in range(lo, hi + 1))
        self.index = {k: n for n, k in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.keys)

    def matrix(self, vec: dict[int, Fraction], offset: int = 0) -> list[list[Laurent]]:
        terms = [[{} for _ in range(self.r)] for _ in range(self.r)]
        for n, (i, j, e) in enumerate(self.keys):
            c = vec.get(offset + n)
            if c:
                terms[i][j][e] = c
        return [[Laurent(t) for t in row] for row in terms]

    def condition_rows(self, sheaf: ConstrainedSheaf, offset: int = 0) -> list[dict[int, Fraction]]:
        rows = []
        for fl in sheaf.bundle.flags:
            p = fl.point
            for W in fl.condition_weights(sheaf.variant):
                row = {}
                for n, (i, j, e) in enumerate(self.keys):
                    c = W[i][j]
                    if c:
                        row[offset + n] = c * p**e
                if row:
                    rows.append(row)
        return rows


def _chart_layouts(sheaf: ConstrainedSheaf, N: int):
    r = sheaf.bundle.rank
    c0 = Layout(r, lambda i, j: (0, N))
    c1 = Layout(r, lambda i, j: (-N, sheaf.twist(i, j)))
    c01 = Layout(r, lambda i, j: (-N, N))
    return c0, c1, c01


class Reducer:
    """Incremental reduced echelon basis of sparse rational vectors.

    Each row carries a tag vector so that reductions also report how a vector
    decomposes over tagged generators (untagged generators are ignored).
    """

    def __init__(self):
        self.rows: dict[int, tuple[dict[int, Fraction], dict[int, Fraction]]] = {}

    def reduce(self, v: dict[int, Fraction], tags: dict[int, Fraction] | None = None):
        v = dict(v)
        tags = dict(tags or {})
        for c in [c for c in v if c in self.rows]:
            f = v.get(c)
            if not f:
                continue
            row, rt = self.rows[c]
            for k, x in row.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for k, x in rt.items():
                nv = tags.get(k, 0) - f * x
                if nv:
                    tags[k] = nv
                else:
                    tags.pop(k, None)
        return v, tags

    def add(self, v: dict[int, Fraction], tags: dict[int, Fraction] | None = None) -> bool:
        v, tags = self.reduce(v, tags)
        if not v:
            return False
        c = min(v)
        s = 1 / v[c]
        v = {k: x * s for k, x in v.items()}
        tags = {k: x * s for k, x in tags.items()}
        for pc, (row, rt) in list(self.rows.items()):
            f = row.get(c)
            if f:
                nrow = dict(row)
                for k, x in v.items():
                    nv = nrow.get(k, 0) - f * x
                    if nv:
                        nrow[k] = nv
                    else:
                        nrow.pop(k, None)
                nrt = dict(rt)
                for k, x in tags.items():
                    nv = nrt.get(k, 0) - f * x
                    if nv:
                        nrt[k] = nv
                    else:
                        nrt.pop(k, None)
                self.rows[pc] = (nrow, nrt)
        self.rows[c] = (v, tags)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


class Quotient:
    """Z / B for sparse generator lists, with coordinates on chosen representatives."""

    def __init__(self, sub: Sequence[dict], space: Sequence[dict]):
        self.red = Reducer()
        for v in sub:
            self.red.add(v)
        self.sub_rank = self.red.rank
        self.reps: list[dict[int, Fraction]] = []
        for v in space:
            k = len(self.reps)
            if self.red.add(v, {k: Fraction(1)}):
                self.reps.append(v)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: dict[int, Fraction]) -> list[Fraction]:
        res, tags = self.red.reduce(v, {})
        if res:
            raise ArithmeticError("vector is not in the cocycle space")
        # v = sum tags_k * rep_k (mod sub) up to sign of the reduction
        return [-tags.get(k, Fraction(0)) for k in range(self.dim)]

    def is_trivial(self, v: dict[int, Fraction]) -> bool:
        return not any(self.coords(v))


# ------------------------------------------------------------- single sheaves


@dataclass
class SheafCohomology:
    sheaf: ConstrainedSheaf
    h0: int
    h1: int
    window: int
    h0_basis: list[list[list[Laurent]]] = field(default_factory=list)
    h1_reps: list[list[list[Laurent]]] = field(default_factory=list)


def _sheaf_at(sheaf: ConstrainedSheaf, N: int, with_bases: bool = False) -> SheafCohomology:
    c0, c1, c01 = _chart_layouts(sheaf, N)
    n0, n1 = len(c0), len(c1)
    cond = c0.condition_rows(sheaf) + c1.condition_rows(sheaf, n0)
    _, cochains = sparse_kernel(cond, n0 + n1)
    images = []
    for u in cochains:
        img: dict[int, Fraction] = {}
        for k, x in u.items():
            key = c0.keys[k] if k < n0 else c1.keys[k - n0]
            idx = c01.index[key]
            img[idx] = img.get(idx, 0) + (x if k >= n0 else -x)
        images.append({k: x for k, x in img.items() if x})
    rank_d = mat_rank(images, len(c01)) if images else 0
    cond01 = c01.condition_rows(sheaf)
    rank_c = mat_rank(cond01, len(c01)) if cond01 else 0
    h0 = len(cochains) - rank_d
    h1 = len(c01) - rank_c - rank_d
    out = SheafCohomology(sheaf, h0, h1, N)
    if with_bases:
        by_row: dict[int, dict[int, Fraction]] = {}
        for col, img in enumerate(images):
            for k, x in img.items():
                by_row.setdefault(k, {})[col] = x
        _, kern = sparse_kernel(list(by_row.values()), len(cochains))
        for w in kern:
            vec: dict[int, Fraction] = {}
            for k, x in w.items():
                for kk, y in cochains[k].items():
                    vec[kk] = vec.get(kk, 0) + x * y
            out.h0_basis.append(c0.matrix(vec))
        _, space = sparse_kernel(cond01, len(c01)) if cond01 else (0, [
            {k: Fraction(1)} for k in range(len(c01))])
        Q = Quotient(images, space)
        out.h1_reps = [c01.matrix(v) for v in Q.reps]
    return out


def default_window(*sheaves: ConstrainedSheaf) -> int:
    n = sheaves[0].bundle.curve.n
    return max(s.max_twist() for s in sheaves) + n + 1


def sheaf_cohomology(sheaf: ConstrainedSheaf, window: int | None = None,
                     with_bases: bool = False) -> SheafCohomology:
    """(h0, h1) with a stabilization check between windows N and N + 1."""
    N = window or default_window(sheaf)
    for _ in range(MAX_RETRIES + 1):
        a = _sheaf_at(sheaf, N, with_bases)
        b = _sheaf_at(sheaf, N + 1)
        if (a.h0, a.h1) == (b.h0, b.h1):
            return a
        N *= 2
    raise StabilizationError(f"cohomology did not stabilize up to window {N}")


def end_sheaves(E: ParabolicBundle, kind: str):
    """(A, B, sign) of the tangent or cotangent two-term complex."""
    w = E.curve.n - 2
    if kind == TANGENT:
        return ConstrainedSheaf(E, PARABOLIC, 0), ConstrainedSheaf(E, PARABOLIC, w), 1
    if kind == COTANGENT:
        return ConstrainedSheaf(E, STRONGLY, 0), ConstrainedSheaf(E, STRONGLY, w), -1
    raise InvalidInputError(f"unknown complex {kind!r}")


# --------------------------------------------------------- total complexes


def _bracket_columns(H: list[list[Poly]], key, sign: int) -> dict[tuple[int, int, int], Fraction]:
    """sign * (e_kl t^f H - H e_kl t^f) as a sparse dict over (i, j, e)."""
    k, l, f = key
    r = len(H)
    out: dict[tuple[int, int, int], Fraction] = {}
    for j in range(r):
        for m, h in enumerate(H[l][j].coeffs):
            if h:
                kk = (k, j, f + m)
                out[kk] = out.get(kk, 0) + sign * h
    for i in range(r):
        for m, h in enumerate(H[i][k].coeffs):
            if h:
                kk = (i, l, f + m)
                out[kk] = out.get(kk, 0) - sign * h
    return {kk: v for kk, v in out.items() if v}


@dataclass
class HyperH1:
    """H^1 of [A -> B] realized as cocycles (a; v0, v1) modulo coboundaries."""

    phi: HiggsField
    kind: str
    window: int
    layouts: tuple
    quotient: Quotient
    cochain_basis: list[dict[int, Fraction]]
    coboundaries: list[dict[int, Fraction]]

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def basis(self) -> list[dict[int, Fraction]]:
        return self.quotient.reps

    def split(self, vec: dict[int, Fraction]):
        """(a, v0, v1) as Laurent matrices."""
        la, lv0, lv1 = self.layouts
        na, n0 = len(la), len(lv0)
        return la.matrix(vec), lv0.matrix(vec, na), lv1.matrix(vec, na + n0)

    def coboundary(self, coeffs: Sequence) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for c, v in zip(coeffs, self.coboundaries):
            c = Fraction(c)
            if c:
                for k, x in v.items():
                    out[k] = out.get(k, 0) + c * x
        return {k: x for k, x in out.items() if x}

    def coords(self, vec: dict[int, Fraction]) -> list[Fraction]:
        return self.quotient.coords(vec)


def _check_parabolic(phi: HiggsField) -> None:
    if validate(phi) not in (PARABOLIC, STRONGLY):
        raise InvalidInputError("the Higgs field is not parabolic")


def _hyper_at(phi: HiggsField, kind: str, N: int) -> HyperH1:
    E = phi.bundle
    A, B, sign = end_sheaves(E, kind)
    r = E.rank
    H = [list(row) for row in phi.numerator]
    spread = E.splitting[0] - E.splitting[-1]
    NB = N + E.curve.n - 2 + spread
    la = Layout(r, lambda i, j: (-N, N))
    lv0 = Layout(r, lambda i, j: (0, NB))
    lv1 = Layout(r, lambda i, j: (-NB, B.twist(i, j)))
    na, n0, n1 = len(la), len(lv0), len(lv1)
    total = na + n0 + n1
    # cocycle equations: v1 - v0 - d a = 0, indexed by (i, j, e)
    eqs: dict[tuple[int, int, int], dict[int, Fraction]] = {}

    def put(key, col, val):
        row = eqs.setdefault(key, {})
        nv = row.get(col, 0) + val
        if nv:
            row[col] = nv
        else:
            row.pop(col, None)

    for n, key in enumerate(la.keys):
        for kk, v in _bracket_columns(H, key, sign).items():
            put(kk, n, -v)
    for n, key in enumerate(lv0.keys):
        put(key, na + n, Fraction(-1))
    for n, key in enumerate(lv1.keys):
        put(key, na + n0 + n, Fraction(1))
    rows = [row for row in eqs.values() if row]
    rows += la.condition_rows(A) + lv0.condition_rows(B, na) + lv1.condition_rows(B, na + n0)
    _, cocycles = sparse_kernel(rows, total)
    # coboundaries of C^0(A)
    c0, c1, _ = _chart_layouts(A, N)
    m0 = len(c0)
    cond = c0.condition_rows(A) + c1.condition_rows(A, m0)
    _, ubasis = sparse_kernel(cond, m0 + len(c1))
    cob = []
    for u in ubasis:
        out: dict[int, Fraction] = {}
        for k, x in u.items():
            if k < m0:
                key, target, s = c0.keys[k], lv0, -1
                off = na
            else:
                key, target, s = c1.keys[k - m0], lv1, 1
                off = na + n0
            idx = la.index[key]
            out[idx] = out.get(idx, 0) + s * x
            for kk, v in _bracket_columns(H, key, sign).items():
                if kk not in target.index:
                    raise ArithmeticError("coboundary leaves the truncation window")
                j = off + target.index[kk]
                out[j] = out.get(j, 0) + x * v
        cob.append({k: x for k, x in out.items() if x})
    Q = Quotient(cob, cocycles)
    return HyperH1(phi, kind, N, (la, lv0, lv1), Q, ubasis, cob)


def hyper_h1(phi: HiggsField, kind: str = TANGENT, window: int | None = None) -> HyperH1:
    _check_parabolic(phi)
    A, B, _ = end_sheaves(phi.bundle, kind)
    N = window or default_window(A, B)
    for _ in range(MAX_RETRIES + 1):
        h = _hyper_at(phi, kind, N)
        if _hyper_at(phi, kind, N + 1).dim == h.dim:
            return h
        N *= 2
    raise StabilizationError(f"hypercohomology did not stabilize up to window {N}")


def les_dimension(phi: HiggsField, kind: str = TANGENT) -> dict:
    """dim H^1 = dim coker(H^0 A -> H^0 B) + dim ker(H^1 A -> H^1 B), from sheaf pieces."""
    E = phi.bundle
    A, B, sign = end_sheaves(E, kind)
    r = E.rank
    H = [list(row) for row in phi.numerator]
    N = default_window(A, B)
    cA = sheaf_cohomology(A, N, with_bases=True)
    cB = sheaf_cohomology(B, N)
    NB = N + E.curve.n - 2 + E.splitting[0] - E.splitting[-1]
    lay = Layout(r, lambda i, j: (-NB, NB))

    def bracket(m: list[list[Laurent]]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, j in itertools.product(range(r), repeat=2):
            for e, c in m[i][j].terms.items():
                for kk, v in _bracket_columns(H, (i, j, e), sign).items():
                    idx = lay.index[kk]
                    out[idx] = out.get(idx, 0) + c * v
        return {k: x for k, x in out.items() if x}

    rank0 = mat_rank([bracket(m) for m in cA.h0_basis], len(lay)) if cA.h0_basis else 0
    # H^1 map: images of representatives modulo coboundaries of C^0(B)
    c0, c1, c01 = _chart_layouts(B, NB)
    m0 = len(c0)
    cond = c0.condition_rows(B) + c1.condition_rows(B, m0)
    _, ub = sparse_kernel(cond, m0 + len(c1))
    deltas = []
    for u in ub:
        out: dict[int, Fraction] = {}
        for k, x in u.items():
            key = c0.keys[k] if k < m0 else c1.keys[k - m0]
            idx = lay.index[key]
            out[idx] = out.get(idx, 0) + (x if k >= m0 else -x)
        deltas.append({k: x for k, x in out.items() if x})
    red = Reducer()
    for v in deltas:
        red.add(v)
    base = red.rank
    for m in cA.h1_reps:
        red.add(bracket(m))
    rank1 = red.rank - base
    coker0 = cB.h0 - rank0
    ker1 = cA.h1 - rank1
    return {"h0_A": cA.h0, "h1_A": cA.h1, "h0_B": cB.h0, "h1_B": cB.h1,
            "rank_H0_map": rank0, "rank_H1_map": rank1,
            "coker_H0": coker0, "ker_H1": ker1, "dim": coker0 + ker1}


# -------------------------------------------------------- pairing and sharp


def _trace_product(X: list[list[Laurent]], Y: list[list[Laurent]]) -> Laurent:
    r = len(X)
    out = Laurent()
    for i in range(r):
        for j in range(r):
            if X[i][j] and Y[j][i]:
                out = out + X[i][j] * Y[j][i]
    return out


def hyper_pairing(x: dict[int, Fraction], cot: HyperH1, y: dict[int, Fraction], tan: HyperH1) -> Fraction:
    """<x, y> = Res_0 [tr(a v0) + tr(u1 b)] dt/q, x = (a; u0, u1), y = (b; v0, v1)."""
    if cot.kind != COTANGENT or tan.kind != TANGENT or cot.phi != tan.phi:
        raise InvalidInputError("pairing needs cotangent and tangent classes of one Higgs field")
    a, _, u1 = cot.split(x)
    b, v0, _ = tan.split(y)
    return residue_at_zero(_trace_product(a, v0) + _trace_product(u1, b), cot.phi.curve)


def pairing_matrix(cot: HyperH1, tan: HyperH1) -> list[list[Fraction]]:
    return [[hyper_pairing(x, cot, y, tan) for y in tan.basis] for x in cot.basis]


def sharp_vector(x: dict[int, Fraction], cot: HyperH1) -> dict[int, Fraction]:
    """(a; u0, u1) -> (a; -u0, -u1); layouts of the two complexes coincide."""
    na = len(cot.layouts[0])
    return {k: (v if k < na else -v) for k, v in x.items()}


@dataclass
class SharpMap:
    matrix: list[list[Fraction]]  # columns: images of cotangent basis vectors
    rank: int
    kernel_dim: int
    tangent: HyperH1
    cotangent: HyperH1

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        """Gram(sharp)_ij = <x_i, sharp x_j>."""
        cot, tan = self.cotangent, self.tangent
        return [[hyper_pairing(xi, cot, sharp_vector(xj, cot), tan) for xj in cot.basis]
                for xi in cot.basis]

    @property
    def skew(self) -> bool:
        G = self.gram
        return all(G[i][j] == -G[j][i] for i in range(len(G)) for j in range(len(G)))

    def to_json(self) -> dict:
        P = pairing_matrix(self.cotangent, self.tangent)
        return {
            "dim_tangent": self.tangent.dim,
            "dim_cotangent": self.cotangent.dim,
            "rank": self.rank,
            "kernel": self.kernel_dim,
            "rank_even": self.rank % 2 == 0,
            "skew_ok": self.skew,
            "gram_rank": mat_rank(self.gram, len(self.gram)) if self.gram else 0,
            "pairing_perfect": bool(P) and mat_rank(P, len(P)) == len(P),
            "levi_kernel_formula": levi_kernel(self.tangent.phi),
        }


def sharp_map(phi: HiggsField, window: int | None = None) -> SharpMap:
    _check_parabolic(phi)
    if sheaf_cohomology(ConstrainedSheaf(phi.bundle, STRONGLY, 0)).h0 != 0:
        raise UnstableError("H^0(SParEnd) is nonzero; the bundle is not simple")
    tan = hyper_h1(phi, TANGENT, window)
    cot = hyper_h1(phi, COTANGENT, tan.window)
    if cot.window != tan.window:
        tan = hyper_h1(phi, TANGENT, cot.window)
    cols = [tan.coords(sharp_vector(x, cot)) for x in cot.basis]
    M = [[cols[j][i] for j in range(len(cols))] for i in range(tan.dim)]
    rank = mat_rank(M, len(cols)) if M and cols else 0
    return SharpMap(M, rank, cot.dim - rank, tan, cot)


def levi_kernel(phi: HiggsField) -> int:
    """sum_p dim of the centralizer of the graded residue in the Levi, minus 1."""
    total = 0
    for fl in phi.bundle.flags:
        A = residue_matrix(phi, fl.point)
        for blk in fl.graded_blocks(A):
            m = len(blk)
            rows = []
            for i, j in itertools.product(range(m), repeat=2):
                # ([X, blk])_{ij} = sum_k X_ik blk_kj - blk_ik X_kj, X flattened
                row = [Fraction(0)] * (m * m)
                for k in range(m):
                    row[i * m + k] += blk[k][j]
                    row[k * m + j] -= blk[i][k]
                rows.append(row)
            rank, _ = mat_kernel(rows, m * m)
            total += m * m - rank
    return total - 1


def _adjugate_poly(A: Sequence[Sequence[Fraction]]) -> list[list[Poly]]:
    """adj(y Id - A) with Poly entries in y."""
    from .exactkernel import bareiss_det

    r = len(A)
    M = [[Poly([-A[i][j], 1]) if i == j else Poly([-A[i][j]]) for j in range(r)] for i in range(r)]
    adj = [[Poly() for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            minor = [[M[a][b] for b in range(r) if b != j] for a in range(r) if a != i]
            det = bareiss_det(minor) if minor else Poly([1])
            adj[j][i] = det * (-1) ** (i + j)
    return adj


def casimir_jacobian(tan: HyperH1) -> list[list[Fraction]]:
    """Rows (p, k): variation of the y^k coefficient of det(y - A_p) along each basis class."""
    phi = tan.phi
    r = phi.rank
    rows = []
    for p in phi.curve.points:
        A = residue_matrix(phi, p)
        adj = _adjugate_poly(A)
        dq = phi.curve.dq(p)
        cols = []
        for y in tan.basis:
            _, v0, _ = tan.split(y)
            V = [[v0[i][j](p) / dq for j in range(r)] for i in range(r)]
            acc = Poly()
            for i in range(r):
                for j in range(r):
                    if V[j][i]:
                        acc = acc - adj[i][j] * V[j][i]
            cols.append([acc.coeff(k) for k in range(r)])
        for k in range(r):
            rows.append([c[k] for c in cols])
    return rows


# -------------------------------------------------------------- audits


def _flag_f(r: int, mults: Sequence[int]) -> Fraction:
    return Fraction(r * r - sum(m * m for m in mults), 2)


def dimension_audit(g: int, r: int, n: int, multiplicities) -> dict:
    """Identity table for the dimension bookkeeping of the Poisson moduli."""
    from .hitchin import base_dims, spectral_genus
    from .spectralflags import deg_L

    if n < 1 or r < 1 or g < 0:
        raise InvalidInputError("need g >= 0, r >= 1, n >= 1")
    if 2 * g - 2 + n <= 0:
        raise InvalidInputError("need 2g - 2 + n > 0")
    if multiplicities == "full":
        multiplicities = [[1] * r] * n
    elif multiplicities == "minimal":
        multiplicities = [[r]] * n
    if len(multiplicities) != n or any(sum(m) != r for m in multiplicities):
        raise InvalidInputError("one multiplicity vector summing to r per point is required")
    fs = [_flag_f(r, m) for m in multiplicities]
    base = base_dims(g, r, n)
    P = (2 * g - 2 + n) * r * r + 1
    Ndim = (g - 1) * r * r + 1 + sum(fs)
    genus = spectral_genus(r, n, g)
    rank = (2 * g - 2) * r * r + n * r * (r - 1) + 2
    # h1(SParEnd) for a simple bundle: -chi
    h1_spar = -((1 - g) * r * r - sum(r * r - f for f in fs))
    table = {
        "dim_P": P,
        "dim_N": Ndim,
        "dim_H": base["dim_H"],
        "dim_H0": base["dim_H0"],
        "dim_H_over_H0": base["dim_quotient"],
        "spectral_genus": genus,
        "rank": rank,
        "deg_L": deg_L(0, r, g, n),
    }
    checks = {
        "H_over_H0_is_nr_minus_1": base["dim_quotient"] == n * r - 1,
        "2H0_plus_quotient_is_P": 2 * base["dim_H0"] + base["dim_quotient"] == P,
        "H0_is_spectral_genus": base["dim_H0"] == genus,
        "rank_is_P_minus_kernel": rank == P - (n * r - 1),
        "half_leaf_is_genus": rank == 2 * genus,
        "N_plus_fiber_is_P": Ndim + h1_spar == P,
        "H_plus_fiber_is_P": base["dim_H"] + genus == P,
    }
    if g == 0:
        checks["line_bundle_sums"] = base["consistent"]
    return {"input": {"g": g, "r": r, "n": n,
                      "multiplicities": [list(m) for m in multiplicities]},
            "values": {k: (int(v) if v.denominator == 1 else str(v)) if isinstance(v, Fraction) else v
                       for k, v in table.items()},
            "checks": checks, "ok": all(checks.values())}
