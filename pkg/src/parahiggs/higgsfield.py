"""Higgs fields Phi = H(t) dt/q on a parabolic bundle over the marked line."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError
from .exactkernel import Poly, to_rat
from .parabolic import PARABOLIC, STRONGLY, ParabolicBundle, global_par_end

INVALID = "invalid"
HIGGS_ONLY = "higgs_only"


@dataclass(frozen=True)
class HiggsField:
    bundle: ParabolicBundle
    numerator: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        H = tuple(tuple(p if isinstance(p, Poly) else Poly(p) for p in row) for row in self.numerator)
        object.__setattr__(self, "numerator", H)
        r = self.bundle.rank
        if len(H) != r or any(len(row) != r for row in H):
            raise InvalidInputError(f"numerator must be {r} x {r}")
        bad = self.bound_violation()
        if bad is not None:
            i, j, deg, bound = bad
            raise InvalidInputError(f"entry ({i},{j}) has degree {deg} > bound {bound}")

    @property
    def rank(self) -> int:
        return self.bundle.rank

    @property
    def curve(self):
        return self.bundle.curve

    def bound(self, i: int, j: int) -> int:
        a = self.bundle.splitting
        return a[i] - a[j] + self.curve.n - 2

    def bound_violation(self):
        for i, row in enumerate(self.numerator):
            for j, p in enumerate(row):
                if p.degree > self.bound(i, j):
                    return i, j, p.degree, self.bound(i, j)
        return None

    def at(self, t0) -> list[list[Fraction]]:
        return [[p(to_rat(t0)) for p in row] for row in self.numerator]

    def to_json(self) -> dict:
        return {
            "bundle": self.bundle.to_json(),
            "numerator": [[p.to_json() for p in row] for row in self.numerator],
        }

    @classmethod
    def from_json(cls, data) -> "HiggsField":
        if not isinstance(data, dict):
            raise InvalidInputError("Higgs JSON must be an object")
        try:
            E = ParabolicBundle.from_json(data["bundle"])
            H = tuple(tuple(Poly.from_json(p) for p in row) for row in data["numerator"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed Higgs JSON: {exc}") from exc
        return cls(E, H)


def residue_matrix(phi: HiggsField, p) -> list[list[Fraction]]:
    """A_p = H(p) / q'(p)."""
    p = to_rat(p)
    phi.curve.index(p)
    s = phi.curve.dq(p)
    return [[x / s for x in row] for row in phi.at(p)]


def classify(bundle: ParabolicBundle, numerator: Sequence[Sequence[Poly]]) -> tuple[str, dict | None]:
    """Classification of a raw numerator, with the offending entry when invalid."""
    try:
        phi = HiggsField(bundle, tuple(tuple(row) for row in numerator))
    except InvalidInputError as exc:
        H = [[p if isinstance(p, Poly) else Poly(p) for p in row] for row in numerator]
        a, n = bundle.splitting, bundle.curve.n
        for i, row in enumerate(H):
            for j, p in enumerate(row):
                if p.degree > a[i] - a[j] + n - 2:
                    return INVALID, {"entry": [i, j], "degree": p.degree,
                                     "bound": a[i] - a[j] + n - 2}
        return INVALID, {"message": str(exc)}
    return validate(phi), None


def validate(phi: HiggsField) -> str:
    """Strongest of higgs_only < parabolic < strongly_parabolic holding at every point."""
    best = STRONGLY
    for fl in phi.bundle.flags:
        A = residue_matrix(phi, fl.point)
        if best == STRONGLY and not fl.satisfies(A, STRONGLY):
            best = PARABOLIC
        if best == PARABOLIC and not fl.satisfies(A, PARABOLIC):
            return HIGGS_ONLY
    return best


def trace_residue_sum(phi: HiggsField) -> Fraction:
    return sum(
        (sum((A[i][i] for i in range(phi.rank)), Fraction(0))
         for A in (residue_matrix(phi, p) for p in phi.curve.points)),
        Fraction(0),
    )


def field_space_basis(bundle: ParabolicBundle, variant: str = PARABOLIC) -> list[HiggsField]:
    """Basis of H^0(ParEnd(E) x K(D)) (or the strongly parabolic version)."""
    space = global_par_end(bundle, variant, bundle.curve.n - 2)
    return [HiggsField(bundle, tuple(tuple(row) for row in m)) for m in space.basis]


def combine(basis: Sequence[HiggsField], coords: Sequence) -> HiggsField:
    E = basis[0].bundle
    r = E.rank
    H = [[Poly() for _ in range(r)] for _ in range(r)]
    for phi, c in zip(basis, coords):
        c = to_rat(c)
        for i in range(r):
            for j in range(r):
                H[i][j] = H[i][j] + phi.numerator[i][j] * c
    return HiggsField(E, tuple(tuple(row) for row in H))

