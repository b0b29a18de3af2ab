"""Compatible flags from eigenvalue groupings, the forgetful map, and deg L.

For a regular residue A with rational spectrum, each ordered grouping of the
eigenvalues into blocks of the prescribed sizes gives exactly one A-invariant
flag with those graded spectra: E_j is the image of the product of (A - s)
over the eigenvalues s in the earlier blocks.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AmbiguityError, InvalidInputError, NonSplitError
from .exactkernel import (
    Poly,
    charpoly,
    identity,
    mat_mul,
    mat_rank,
    rational_roots,
    rref,
    to_rat,
    transpose,
)
from .higgsfield import HiggsField, validate
from .parabolic import PARABOLIC, STRONGLY, FlagData, ParabolicBundle, is_stable

_STRENGTH = {"invalid": 0, "higgs_only": 1, PARABOLIC: 2, STRONGLY: 3}


def spectrum(A: Sequence[Sequence]) -> list[Fraction]:
    """Eigenvalues with multiplicity, sorted; NonSplitError if not all rational."""
    cp = charpoly(A)
    roots = rational_roots(cp)
    if sum(m for _, m in roots) != len(A):
        raise NonSplitError(f"characteristic polynomial {cp} does not split over Q")
    return sorted(s for s, m in roots for _ in range(m))


def is_regular(A: Sequence[Sequence]) -> bool:
    """Minimal polynomial has degree r, i.e. I, A, ..., A^(r-1) are independent."""
    r = len(A)
    P = identity(r)
    powers = []
    for _ in range(r):
        powers.append([x for row in P for x in row])
        P = mat_mul(P, A)
    return mat_rank(powers, r * r) == r


def _column_basis(M: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    rows, _ = rref(transpose(M), len(M))
    return [list(r) for r in rows if any(r)]


@dataclass(frozen=True)
class CompatibleFlag:
    grouping: tuple[tuple[Fraction, ...], ...]
    multiplicities: tuple[int, ...]
    frame: tuple[tuple[Fraction, ...], ...]  # rows of B

    def subspace(self, j: int) -> list[list[Fraction]]:
        r = len(self.frame)
        d = sum(self.multiplicities[j - 1:])
        return [[row[c] for row in self.frame] for c in range(r - d, r)]

    def to_flag(self, point, weights: Sequence) -> FlagData:
        return FlagData(to_rat(point), self.multiplicities, self.frame,
                        tuple(to_rat(w) for w in weights))


def _placeholder_weights(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i, k) for i in range(k))


def flag_from_grouping(A: Sequence[Sequence], grouping: Sequence[Sequence]) -> CompatibleFlag:
    A = [[to_rat(x) for x in row] for row in A]
    r = len(A)
    groups = tuple(tuple(sorted(to_rat(s) for s in g)) for g in grouping)
    if sorted(s for g in groups for s in g) != spectrum(A):
        raise InvalidInputError("grouping does not match the spectrum of A")
    if any(not g for g in groups):
        raise InvalidInputError("empty eigenvalue group")
    if not is_regular(A):
        raise AmbiguityError("residue is not regular; compatible flags are not unique")
    mults = tuple(len(g) for g in groups)
    steps = []
    P = identity(r)
    for g in groups:
        steps.append(_column_basis(P))
        for s in g:
            P = mat_mul(P, [[A[i][j] - (s if i == j else 0) for j in range(r)] for i in range(r)])
    # frame columns: deepest step last
    cols: list[list[Fraction]] = []
    for basis in reversed(steps):
        for v in basis:
            if mat_rank(cols + [v], r) > len(cols):
                cols.append(v)
    cols.reverse()
    frame = tuple(tuple(cols[c][i] for c in range(r)) for i in range(r))
    out = CompatibleFlag(groups, mults, frame)
    _verify(A, out)
    return out


def _verify(A, cf: CompatibleFlag) -> None:
    fl = FlagData(Fraction(1), cf.multiplicities, cf.frame, _placeholder_weights(len(cf.multiplicities)))
    dims = [len(_column_basis(transpose(cf.subspace(j)))) for j in range(1, len(cf.grouping) + 1)]
    if dims != fl.dims():
        raise ArithmeticError("flag step dimensions are wrong")
    if not fl.satisfies(A, PARABOLIC):
        raise ArithmeticError("flag is not invariant")
    for block, g in zip(fl.graded_blocks(A), cf.grouping):
        if charpoly(block) != Poly.from_roots(g):
            raise ArithmeticError("graded spectrum mismatch")


def groupings(eigs: Sequence[Fraction], multiplicities: Sequence[int]) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Distinct ordered sequences of eigenvalue multisets with the given sizes."""
    eigs = sorted(eigs)
    if sum(multiplicities) != len(eigs):
        raise InvalidInputError("multiplicities must sum to the rank")
    out = set()
    for perm in set(itertools.permutations(eigs)):
        gs, start = [], 0
        for m in multiplicities:
            gs.append(tuple(sorted(perm[start:start + m])))
            start += m
        out.add(tuple(gs))
    return sorted(out)


def enumerate_flags(A: Sequence[Sequence], multiplicities: Sequence[int]) -> list[CompatibleFlag]:
    eigs = spectrum(A)
    return [flag_from_grouping(A, g) for g in groupings(eigs, multiplicities)]


def fiber_count(residues: Sequence[Sequence[Sequence]], multiplicities: Sequence[Sequence[int]]) -> int:
    """Number of compatible parabolic structures: product of per-point counts."""
    return math.prod(len(enumerate_flags(A, m)) for A, m in zip(residues, multiplicities))


# ----------------------------------------------------------- forgetful map


def _merge_ok(fine: Sequence[int], coarse: Sequence[int]) -> bool:
    fine_cuts = set(itertools.accumulate(fine))
    return sum(fine) == sum(coarse) and set(itertools.accumulate(coarse)) <= fine_cuts


@dataclass
class CoarsenResult:
    bundle: ParabolicBundle
    field: HiggsField
    classification_before: str
    classification_after: str
    stability: str | None


def coarsen(phi: HiggsField, multiplicities, weights) -> CoarsenResult:
    """Merge adjacent flag steps; Phi is unchanged and re-validated."""
    E = phi.bundle
    n = E.curve.n
    if multiplicities and isinstance(multiplicities[0], int):
        multiplicities = [multiplicities] * n
    if weights and not isinstance(weights[0], (list, tuple)):
        weights = [weights] * n
    if len(multiplicities) != n or len(weights) != n:
        raise InvalidInputError("need target data for every marked point")
    flags = []
    for fl, m, w in zip(E.flags, multiplicities, weights):
        m = tuple(int(x) for x in m)
        if not _merge_ok(fl.multiplicities, m):
            raise InvalidInputError(
                f"{list(m)} is not obtained by merging adjacent blocks of {list(fl.multiplicities)}")
        flags.append(FlagData(fl.point, m, fl.frame, tuple(to_rat(x) for x in w)))
    coarse = E.with_flags(flags)
    new_phi = HiggsField(coarse, phi.numerator)
    before, after = validate(phi), validate(new_phi)
    if _STRENGTH[after] < _STRENGTH[before]:
        raise ArithmeticError("coarsening weakened the classification")
    verdict = is_stable(coarse).verdict if coarse.rank <= 2 else None
    return CoarsenResult(coarse, new_phi, before, after, verdict)


def deg_L(d: int, r: int, g: int, n: int) -> int:
    """deg L = d + r(1 - r)(1 - g - n/2)."""
    val = d + r * (1 - r) * (1 - g - Fraction(n, 2))
    if val.denominator != 1:
        raise ArithmeticError("deg L is not an integer")
    return int(val)
