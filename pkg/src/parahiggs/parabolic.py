"""Parabolic bundles on the marked line.

A bundle is stored in split form O(a_1) + ... + O(a_r) with a_1 >= ... >= a_r.
At each marked point the flag is given by an invertible frame B_p whose last
d_i columns span E_{p,i}, d_i = m_i + m_{i+1} + ...  In the frame basis a
parabolic endomorphism is block lower triangular, a strongly parabolic one is
strictly block lower triangular.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InvalidInputError, UnsupportedError
from .exactkernel import (
    Poly,
    ResidueField,
    mat_inv,
    mat_kernel,
    mat_rank,
    poly_gcd,
    poly_mat_kernel,
    rat_str,
    to_rat,
)
from .projline import MarkedCurve

PARABOLIC = "parabolic"
STRONGLY = "strongly_parabolic"
NONE = "none"


@dataclass(frozen=True)
class FlagData:
    point: Fraction
    multiplicities: tuple[int, ...]
    frame: tuple[tuple[Fraction, ...], ...]  # rows of B_p
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", to_rat(self.point))
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))
        object.__setattr__(
            self, "frame", tuple(tuple(to_rat(x) for x in row) for row in self.frame)
        )
        object.__setattr__(self, "weights", tuple(to_rat(w) for w in self.weights))
        r = len(self.frame)
        if any(m <= 0 for m in self.multiplicities) or sum(self.multiplicities) != r:
            raise InvalidInputError(
                f"multiplicities {self.multiplicities} at {rat_str(self.point)} must be positive and sum to {r}"
            )
        if any(len(row) != r for row in self.frame):
            raise InvalidInputError("flag frame must be square")
        if len(self.weights) != len(self.multiplicities):
            raise InvalidInputError("one weight per flag step is required")
        if not all(0 <= w < 1 for w in self.weights):
            raise InvalidInputError("weights must lie in [0, 1)")
        if any(a >= b for a, b in zip(self.weights, self.weights[1:])):
            raise InvalidInputError("weights must be strictly increasing")
        if mat_rank([list(row) for row in self.frame]) != r:
            raise InvalidInputError(f"flag frame at {rat_str(self.point)} is singular")

    @property
    def rank(self) -> int:
        return len(self.frame)

    @property
    def length(self) -> int:
        return len(self.multiplicities)

    @cached_property
    def frame_inv(self) -> list[list[Fraction]]:
        return mat_inv([list(row) for row in self.frame])

    def column(self, c: int) -> list[Fraction]:
        return [row[c] for row in self.frame]

    def dims(self) -> list[int]:
        """d_i = dim E_{p,i} for i = 1..length."""
        return [sum(self.multiplicities[i:]) for i in range(self.length)]

    def subspace(self, i: int) -> list[list[Fraction]]:
        """Spanning columns of E_{p,i} (1-based)."""
        d = sum(self.multiplicities[i - 1:])
        return [self.column(c) for c in range(self.rank - d, self.rank)]

    def block_of(self, c: int) -> int:
        acc = 0
        for b, m in enumerate(self.multiplicities):
            acc += m
            if c < acc:
                return b
        raise IndexError(c)

    @property
    def f(self) -> Fraction:
        """Dimension of the flag variety: (r^2 - sum m_i^2) / 2."""
        r = self.rank
        return Fraction(r * r - sum(m * m for m in self.multiplicities), 2)

    def forbidden(self, variant: str) -> list[tuple[int, int]]:
        """Positions (k, l) of B^-1 M B that must vanish."""
        if variant == NONE:
            return []
        r = self.rank
        strict = variant == STRONGLY
        out = []
        for k in range(r):
            for l in range(r):
                bk, bl = self.block_of(k), self.block_of(l)
                if bk < bl or (strict and bk == bl):
                    out.append((k, l))
        return out

    def condition_weights(self, variant: str) -> list[list[list[Fraction]]]:
        """Linear functionals W with sum_ij W[i][j] M[i][j] = 0 cutting out the variant."""
        binv, b = self.frame_inv, self.frame
        r = self.rank
        return [
            [[binv[k][i] * b[j][l] for j in range(r)] for i in range(r)]
            for k, l in self.forbidden(variant)
        ]

    def conjugate(self, m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
        r = self.rank
        binv, b = self.frame_inv, self.frame
        mb = [[sum((m[i][j] * b[j][l] for j in range(r)), Fraction(0)) for l in range(r)]
              for i in range(r)]
        return [[sum((binv[k][i] * mb[i][l] for i in range(r)), Fraction(0)) for l in range(r)]
                for k in range(r)]

    def satisfies(self, m: Sequence[Sequence[Fraction]], variant: str) -> bool:
        n = self.conjugate(m)
        return all(n[k][l] == 0 for k, l in self.forbidden(variant))

    def graded_blocks(self, m: Sequence[Sequence[Fraction]]) -> list[list[list[Fraction]]]:
        """Diagonal blocks of B^-1 M B: the induced maps on E_{p,i}/E_{p,i+1}."""
        n = self.conjugate(m)
        out, start = [], 0
        for mult in self.multiplicities:
            out.append([row[start:start + mult] for row in n[start:start + mult]])
            start += mult
        return out

    def to_json(self) -> dict:
        return {
            "point": rat_str(self.point),
            "multiplicities": list(self.multiplicities),
            "frame": [[rat_str(x) for x in self.column(c)] for c in range(self.rank)],
            "weights": [rat_str(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, data) -> "FlagData":
        try:
            cols = [[to_rat(x) for x in col] for col in data["frame"]]
            rows = [tuple(col[i] for col in cols) for i in range(len(cols))]
            return cls(
                point=to_rat(data["point"]),
                multiplicities=tuple(data["multiplicities"]),
                frame=tuple(rows),
                weights=tuple(to_rat(w) for w in data["weights"]),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise InvalidInputError(f"malformed flag entry: {exc}") from exc


def flag_from_lines(point, lines: Sequence[Sequence], weights: Sequence, multiplicities=None) -> FlagData:
    """Build FlagData from frame columns (last columns span the deepest step)."""
    cols = [[to_rat(x) for x in c] for c in lines]
    r = len(cols)
    rows = tuple(tuple(cols[c][i] for c in range(r)) for i in range(r))
    if multiplicities is None:
        multiplicities = (1,) * r
    return FlagData(to_rat(point), tuple(multiplicities), rows, tuple(to_rat(w) for w in weights))


@dataclass(frozen=True)
class ParabolicBundle:
    curve: MarkedCurve
    splitting: tuple[int, ...]
    flags: tuple[FlagData, ...]

    def __post_init__(self):
        object.__setattr__(self, "splitting", tuple(int(a) for a in self.splitting))
        object.__setattr__(self, "flags", tuple(self.flags))
        a = self.splitting
        if not a:
            raise InvalidInputError("rank must be positive")
        if any(x < y for x, y in zip(a, a[1:])):
            raise InvalidInputError("splitting type must be non-increasing")
        if len(self.flags) != self.curve.n:
            raise InvalidInputError("one flag per marked point is required")
        for p, fl in zip(self.curve.points, self.flags):
            if fl.point != p:
                raise InvalidInputError("flags must be listed in the order of the curve points")
            if fl.rank != len(a):
                raise InvalidInputError(f"flag at {rat_str(p)} has the wrong rank")

    @property
    def rank(self) -> int:
        return len(self.splitting)

    @property
    def degree(self) -> int:
        return sum(self.splitting)

    def flag_at(self, p) -> FlagData:
        return self.flags[self.curve.index(p)]

    def with_flags(self, flags: Sequence[FlagData]) -> "ParabolicBundle":
        return ParabolicBundle(self.curve, self.splitting, tuple(flags))

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "splitting": list(self.splitting),
            "flags": [f.to_json() for f in self.flags],
        }

    @classmethod
    def from_json(cls, data) -> "ParabolicBundle":
        if not isinstance(data, dict):
            raise InvalidInputError("bundle JSON must be an object")
        try:
            curve = MarkedCurve.from_json(data["curve"])
            flags = [FlagData.from_json(f) for f in data["flags"]]
            splitting = tuple(int(a) for a in data["splitting"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed bundle JSON: {exc}") from exc
        order = {fl.point: fl for fl in flags}
        if len(order) != len(flags) or set(order) != set(curve.points):
            raise InvalidInputError("flags must cover each marked point exactly once")
        return cls(curve, splitting, tuple(order[p] for p in curve.points))


def pdeg_slope(E: ParabolicBundle) -> tuple[Fraction, Fraction]:
    pdeg = Fraction(E.degree) + sum(
        (m * w for fl in E.flags for m, w in zip(fl.multiplicities, fl.weights)), Fraction(0)
    )
    return pdeg, pdeg / E.rank


# ---------------------------------------------------------------- subbundles


@dataclass(frozen=True)
class SubbundleMap:
    """Saturated inclusion F -> E given by an r x k polynomial matrix."""

    matrix: tuple[tuple[Poly, ...], ...]
    degree: int

    @property
    def rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def fiber(self, p) -> list[list[Fraction]]:
        """Spanning vectors of F|_p."""
        p = to_rat(p)
        return [[row[j](p) for row in self.matrix] for j in range(self.rank)]

    def columns(self) -> list[list[Poly]]:
        return [[row[j] for row in self.matrix] for j in range(self.rank)]

    def to_json(self) -> dict:
        return {
            "columns": [[p.to_json() for p in col] for col in self.columns()],
            "degree": self.degree,
        }


def _minors(cols: list[list[Poly]], r: int):
    k = len(cols)
    from .exactkernel import bareiss_det

    for rows in itertools.combinations(range(r), k):
        yield rows, bareiss_det([[cols[j][i] for j in range(k)] for i in rows])


def _irreducible_factors(p: Poly) -> list[Poly]:
    from ._symbolic import factor_univariate

    return [f for f, _ in factor_univariate(p)]


def saturate(matrix: Sequence[Sequence], splitting: Sequence[int]) -> SubbundleMap:
    """Saturate the image of an r x k polynomial matrix inside O(a_1)+...+O(a_r)."""
    r = len(splitting)
    rows = [[p if isinstance(p, Poly) else Poly.from_json(p) for p in row] for row in matrix]
    if len(rows) != r:
        raise InvalidInputError("inclusion matrix must have one row per summand")
    k = len(rows[0]) if rows else 0
    cols = [[rows[i][j] for i in range(r)] for j in range(k)]
    minors = [m for _, m in _minors(cols, r)]
    g = Poly()
    for m in minors:
        g = poly_gcd(g, m)
    if not g:
        raise InvalidInputError("inclusion is rank deficient")
    for pi in _irreducible_factors(g):
        field_ = ResidueField(pi)
        while True:
            gg = Poly()
            for _, m in _minors(cols, r):
                gg = poly_gcd(gg, m)
            if gg % pi:
                break
            reduced = [[field_.reduce(cols[j][i]) for j in range(k)] for i in range(r)]
            kern = field_.kernel(reduced, k)
            vec = kern[0]
            j0 = next(j for j, c in enumerate(vec) if c)
            inv = field_.inv(vec[j0])
            vec = [field_.mul(c, inv) for c in vec]
            new = [Poly() for _ in range(r)]
            for j, c in enumerate(vec):
                if c:
                    new = [a + c * b for a, b in zip(new, cols[j])]
            cols[j0] = [x.exact_div(pi) for x in new]
    for j, col in enumerate(cols):
        lead = next(x for x in col if x).lc
        cols[j] = [x * (1 / lead) for x in col]
    a = list(splitting)
    deg = min(
        sum(a[i] for i in rows_) - m.degree for rows_, m in _minors(cols, r) if m
    )
    mat = tuple(tuple(cols[j][i] for j in range(k)) for i in range(r))
    return SubbundleMap(mat, deg)


def _span_dim(vectors: list[list[Fraction]]) -> int:
    vs = [v for v in vectors if any(v)]
    return mat_rank(vs, len(vs[0])) if vs else 0


@dataclass(frozen=True)
class InducedFlag:
    point: Fraction
    dims: tuple[int, ...]
    multiplicities: tuple[int, ...]
    weights: tuple[Fraction, ...]


def induce_sub(E: ParabolicBundle, F: SubbundleMap) -> list[InducedFlag]:
    """Induced parabolic structure on a saturated subbundle."""
    out = []
    for fl in E.flags:
        fib = F.fiber(fl.point)
        k = _span_dim(fib)
        if k != F.rank:
            raise InvalidInputError("subbundle is not saturated at a marked point")
        inter = []
        for i in range(1, fl.length + 1):
            sub = fl.subspace(i)
            inter.append(k + len(sub) - _span_dim(fib + sub))
        dims, weights = [], []
        for i, dm in enumerate(inter):
            if dm == 0:
                break
            if dims and dims[-1] == dm:
                weights[-1] = fl.weights[i]
            else:
                dims.append(dm)
                weights.append(fl.weights[i])
        mults = [a - b for a, b in zip(dims, dims[1:] + [0])]
        out.append(InducedFlag(fl.point, tuple(dims), tuple(mults), tuple(weights)))
    return out


def induced_pdeg(E: ParabolicBundle, F: SubbundleMap) -> Fraction:
    return Fraction(F.degree) + sum(
        (m * w for ind in induce_sub(E, F) for m, w in zip(ind.multiplicities, ind.weights)),
        Fraction(0),
    )


# ----------------------------------------------------------------- stability


@dataclass
class StabilityVerdict:
    verdict: str  # stable | semistable_not_stable | unstable
    slope: Fraction
    best_slope: Fraction | None
    witness: SubbundleMap | None
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "slope": rat_str(self.slope),
            "best_subbundle_slope": None if self.best_slope is None else rat_str(self.best_slope),
            "witness": None if self.witness is None else self.witness.to_json(),
            "certificate": self.certificate,
        }


def _verdict(best: Fraction | None, slope: Fraction) -> str:
    if best is None or best < slope:
        return "stable"
    if best == slope:
        return "semistable_not_stable"
    return "unstable"


def _line_candidates(E: ParabolicBundle):
    """Best line subbundle per (degree, incidence pattern), rank 2 only."""
    a1, a2 = E.splitting
    _, slope = pdeg_slope(E)
    full = [i for i, fl in enumerate(E.flags) if fl.length == 2]
    dmin = math.floor(slope - sum(max(fl.weights) for fl in E.flags))
    for d in range(a1, dmin - 1, -1):
        n1, n2 = a1 - d + 1, max(a2 - d + 1, 0)
        for size in range(len(full), -1, -1):
            for S in itertools.combinations(full, size):
                rows = []
                for i in S:
                    fl = E.flags[i]
                    p, e = fl.point, fl.column(1)
                    # det[f(p), e] = f1(p) e2 - f2(p) e1
                    rows.append([p**k * e[1] for k in range(n1)] + [-(p**k) * e[0] for k in range(n2)])
                _, kern = mat_kernel(rows, n1 + n2) if rows else (0, [
                    [Fraction(int(i == j)) for j in range(n1 + n2)] for i in range(n1 + n2)])
                if not kern:
                    continue
                v = kern[0]
                col = [Poly(v[:n1]), Poly(v[n1:])]
                yield d, S, col


def is_stable(E: ParabolicBundle, candidates: Sequence[SubbundleMap] | None = None) -> StabilityVerdict:
    """Slope stability; exhaustive for rank <= 2, candidate-relative above."""
    pdeg, slope = pdeg_slope(E)
    if E.rank == 1:
        return StabilityVerdict("stable", slope, None, None, {"method": "rank one"})
    if candidates is not None:
        best, wit = None, None
        for F in candidates:
            s = induced_pdeg(E, F) / F.rank
            if best is None or s > best:
                best, wit = s, F
        return StabilityVerdict(_verdict(best, slope), slope, best, wit,
                                {"method": "candidate list", "count": len(candidates)})
    if E.rank != 2:
        raise UnsupportedError("exhaustive stability only for rank <= 2; pass candidates")
    best, wit, checked = None, None, 0
    seen: set[tuple] = set()
    for d, S, col in _line_candidates(E):
        checked += 1
        F = saturate([[col[0]], [col[1]]], E.splitting)
        key = (F.degree, F.matrix[0][0].coeffs, F.matrix[1][0].coeffs)  # already normalized
        if key in seen:
            continue
        seen.add(key)
        value = induced_pdeg(E, F)
        if best is None or value > best:
            best, wit = value, F
    dmin = math.floor(slope - sum(max(fl.weights) for fl in E.flags))
    return StabilityVerdict(
        _verdict(best, slope), slope, best, wit,
        {"method": "exhaustive line subbundles", "degree_window": [dmin, E.splitting[0]],
         "systems_solved": checked},
    )


# ---------------------------------------------------------------- genericity


@dataclass
class GenericityCertificate:
    generic: bool
    window: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"generic": self.generic, "window": self.window, "witness": self.witness}


def _size_k_sums(mults: Sequence[int], weights: Sequence[Fraction], k: int):
    """Sums of size-k sub-multisets, with one choice vector per sum."""
    out: dict[Fraction, tuple[int, ...]] = {}
    for choice in itertools.product(*(range(m + 1) for m in mults)):
        if sum(choice) == k:
            s = sum((c * w for c, w in zip(choice, weights)), Fraction(0))
            out.setdefault(s, choice)
    return out


def is_generic_weights(r: int, d: int, multiplicities: Sequence[Sequence[int]],
                       weights: Sequence[Sequence]) -> GenericityCertificate:
    """Generic iff no rank-k < r weight selection makes d' + sum = k pdeg / r."""
    n = len(weights)
    weights = [[to_rat(w) for w in ws] for ws in weights]
    pdeg = d + sum((m * w for ms, ws in zip(multiplicities, weights) for m, w in zip(ms, ws)),
                   Fraction(0))
    for k in range(1, r):
        target = k * pdeg / r
        reach: dict[Fraction, list] = {Fraction(0): []}
        for ms, ws in zip(multiplicities, weights):
            local = _size_k_sums(ms, ws, k)
            reach = {s + t: path + [c] for s, path in reach.items() for t, c in local.items()}
        for s, path in sorted(reach.items()):
            dd = target - s
            if dd.denominator == 1 and abs(dd - target) <= k * n:
                return GenericityCertificate(False, n, {
                    "k": k, "d_prime": int(dd),
                    "choices": [list(c) for c in path],
                })
    return GenericityCertificate(True, n)


# ----------------------------------------------------- global endomorphisms


@dataclass
class EndSpace:
    variant: str
    twist: int
    h0: int
    basis: list[list[list[Poly]]]
    chi: int

    @property
    def h1(self) -> int:
        return self.h0 - self.chi


def _entry_bounds(E: ParabolicBundle, twist: int) -> list[list[int]]:
    a = E.splitting
    return [[a[i] - a[j] + twist for j in range(E.rank)] for i in range(E.rank)]


def codim(fl: FlagData, variant: str) -> int:
    if variant == NONE:
        return 0
    f = int(fl.f)
    return f if variant == PARABOLIC else fl.rank ** 2 - f


def global_par_end(E: ParabolicBundle, variant: str = PARABOLIC, twist: int = 0) -> EndSpace:
    """H^0 of ParEnd(E)(twist) or SParEnd(E)(twist) as a polynomial linear system."""
    r = E.rank
    bounds = _entry_bounds(E, twist)
    index = []
    for i in range(r):
        for j in range(r):
            for e in range(bounds[i][j] + 1):
                index.append((i, j, e))
    rows = []
    for fl in E.flags:
        for w in fl.condition_weights(variant):
            rows.append([w[i][j] * fl.point**e for i, j, e in index])
    ncols = len(index)
    if rows:
        _, kern = mat_kernel(rows, ncols)
    else:
        kern = [[Fraction(int(a == b)) for b in range(ncols)] for a in range(ncols)]
    basis = []
    for v in kern:
        coeffs = [[[Fraction(0)] * (max(bounds[i][j], -1) + 1) for j in range(r)] for i in range(r)]
        for (i, j, e), c in zip(index, v):
            coeffs[i][j][e] = c
        basis.append([[Poly(coeffs[i][j]) for j in range(r)] for i in range(r)])
    chi = sum(bounds[i][j] + 1 for i in range(r) for j in range(r)) - sum(
        codim(fl, variant) for fl in E.flags)
    return EndSpace(variant, twist, len(basis), basis, chi)


# --------------------------------------------------- kernels and images


def poly_matmul(a, b):
    n, m, k = len(a), len(b), len(b[0])
    return [[sum((a[i][l] * b[l][j] for l in range(m)), Poly()) for j in range(k)]
            for i in range(n)]


def kernel_image(E: ParabolicBundle, f: Sequence[Sequence[Poly]]):
    """Kernel and image subbundles of f^r for a global endomorphism f.

    Returns (None, None) when f^r is zero or invertible.
    """
    r = E.rank
    g = [list(row) for row in f]
    for _ in range(r - 1):
        g = poly_matmul(g, f)
    kern = poly_mat_kernel(g, r)
    if not kern or len(kern) == r:
        return None, None
    K = saturate([[v[i] for v in kern] for i in range(r)], E.splitting)
    cols: list[list[Poly]] = []
    for j in range(r):
        trial = cols + [[g[i][j] for i in range(r)]]
        mat = [[c[i] for c in trial] for i in range(r)]
        if len(poly_mat_kernel(mat, len(trial))) == 0:
            cols = trial
    image = saturate([[c[i] for c in cols] for i in range(r)], E.splitting)
    return K, image
