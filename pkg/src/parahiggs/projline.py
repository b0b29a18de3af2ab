"""The base curve P^1 with a reduced marked divisor.

Charts: U0 = {t finite} and U1 = {t != 0}.  Marked points avoid 0 and
infinity, so every point lies on the overlap.  K(D) is trivialized over U0 by
the global frame dt/q with q = prod (t - p), which identifies K(D) with
O(n - 2); K itself is O(-2) in the frame dt.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InvalidInputError
from .exactkernel import Laurent, Poly, rat_str, to_rat


@dataclass(frozen=True)
class MarkedCurve:
    points: tuple[Fraction, ...]
    genus: int = 0

    def __post_init__(self):
        pts = tuple(to_rat(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.genus != 0:
            raise InvalidInputError("the geometric engine only handles genus 0")
        if len(pts) < 3:
            raise InvalidInputError("genus 0 requires at least 3 marked points")
        if len(set(pts)) != len(pts):
            raise InvalidInputError("marked points must be distinct")
        if any(p == 0 for p in pts):
            raise InvalidInputError("marked points must avoid t = 0 (apply a Moebius map)")

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def q(self) -> Poly:
        return Poly.from_roots(self.points)

    @cached_property
    def dq(self) -> Poly:
        return self.q.derivative()

    def dq_at(self, p) -> Fraction:
        return self.dq(p)

    def index(self, p) -> int:
        p = to_rat(p)
        try:
            return self.points.index(p)
        except ValueError:
            raise InvalidInputError(f"{rat_str(p)} is not a marked point") from None

    def to_json(self) -> dict:
        return {"points": [rat_str(p) for p in self.points]}

    @classmethod
    def from_json(cls, data) -> "MarkedCurve":
        if not isinstance(data, dict) or "points" not in data:
            raise InvalidInputError("curve JSON needs a 'points' array")
        return cls(tuple(to_rat(p) for p in data["points"]))


@dataclass(frozen=True)
class LineBundleSection:
    """A section of O(k), stored as its value in the U0 trivialization."""

    k: int
    poly: Poly

    def __post_init__(self):
        if self.poly.degree > self.k:
            raise InvalidInputError(f"degree {self.poly.degree} exceeds twist {self.k}")


def h_line(k: int) -> tuple[int, int]:
    """(h0, h1) of O(k) on P^1."""
    return max(k + 1, 0), max(-k - 1, 0)


def residues(c: Poly, curve: MarkedCurve) -> dict[Fraction, Fraction]:
    """Residues of the form c dt/q at the marked points."""
    if c.degree > curve.n - 2:
        raise InvalidInputError(
            f"c dt/q is not a section of K(D): deg c = {c.degree} > n - 2 = {curve.n - 2}"
        )
    return {p: c(p) / curve.dq(p) for p in curve.points}


def residue_pairing_line(f: LineBundleSection, g: Laurent) -> Fraction:
    """Serre pairing H^0(O(k)) x H^1(O(-k-2)) -> Q: the t^-1 coefficient of f g."""
    return (Laurent.from_poly(f.poly) * g).coeff(-1)


def h1_line_basis(k: int) -> list[Laurent]:
    """Cech representatives t^j, k < j < 0, of H^1(O(k))."""
    return [Laurent.monomial(j) for j in range(-1, k, -1)]


def inverse_series(q: Poly, order: int) -> list[Fraction]:
    """Taylor coefficients of 1/q at t = 0 up to t**order (q(0) != 0)."""
    c0 = q.coeff(0)
    if c0 == 0:
        raise InvalidInputError("1/q has a pole at 0")
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = Fraction(int(k == 0))
        for j in range(1, min(k, q.degree) + 1):
            acc -= q.coeff(j) * out[k - j]
        out.append(acc / c0)
    return out


def residue_at_zero(numerator: Laurent, curve: MarkedCurve) -> Fraction:
    """Res_{t=0} of numerator(t) dt/q(t)."""
    if not numerator:
        return Fraction(0)
    lo = numerator.min_exp()
    if lo >= 0:
        return Fraction(0)
    series = inverse_series(curve.q, -lo - 1)
    return sum((c * series[-1 - e] for e, c in numerator.terms.items() if e < 0),
               Fraction(0))


def curve_from_points(points: Sequence) -> MarkedCurve:
    return MarkedCurve(tuple(to_rat(p) for p in points))
