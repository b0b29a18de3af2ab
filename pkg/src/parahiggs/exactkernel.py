"""Exact arithmetic over Q: polynomials, Laurent polynomials, bivariate
polynomials, and rational linear algebra.

Rationals are :class:`fractions.Fraction`.  Matrices are plain lists of rows.
Elimination is done fraction-free on sparse integer rows, which keeps the
coefficient growth in check for the Cech matrices built in :mod:`hyperco`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import InvalidInputError

Rat = Fraction


def to_rat(value) -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``"num/den"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational: {value!r}") from exc
    raise InvalidInputError(f"not a rational: {value!r} (floats are refused)")


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- polynomials


class Poly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rat(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(rat_str(c) for c in self.coeffs)}])"

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_rat(other) if not isinstance(other, Fraction) else other
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                q[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(q), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "Poly":
        return self * (1 / self.lc) if self.coeffs else self

    def compose(self, inner: "Poly") -> "Poly":
        return self(inner)

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        if not isinstance(data, list):
            raise InvalidInputError("polynomial must be a coefficient array")
        return cls(to_rat(c) for c in data)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly()
    return (a * b // poly_gcd(a, b)).monic()


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic() if p else p
    return (p // poly_gcd(p, p.derivative())).monic()


def _int_divisors(n: int) -> list[int]:
    from sympy import divisors

    return divisors(abs(n))


def integer_primitive(p: Poly) -> list[int]:
    """Integer coefficient list proportional to ``p`` with content 1."""
    den = reduce(math.lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(math.gcd, ints, 0) or 1
    return [v // g for v in ints]


def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicity, via the rational root theorem."""
    if not p:
        raise InvalidInputError("rational_roots of the zero polynomial")
    found: list[tuple[Fraction, int]] = []
    mult0 = 0
    while p.degree >= 1 and p.coeffs[0] == 0:
        p = Poly(p.coeffs[1:])
        mult0 += 1
    if mult0:
        found.append((Fraction(0), mult0))
    if p.degree < 1:
        return found
    ints = integer_primitive(squarefree_part(p))
    cands = set()
    for num in _int_divisors(ints[0]):
        for den in _int_divisors(ints[-1]):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    sq = Poly(ints)
    for c in sorted(cands):
        if sq(c) == 0:
            m = 0
            lin = Poly([-c, 1])
            q = p
            while True:
                quo, rem = divmod(q, lin)
                if rem:
                    break
                q = quo
                m += 1
            found.append((c, m))
    return found


# ------------------------------------------------------------ Laurent series


class Laurent:
    """Sparse Laurent polynomial in t: ``{exponent: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        self.terms: dict[int, Fraction] = {
            int(e): Fraction(c) for e, c in items if c != 0
        }

    @classmethod
    def from_poly(cls, p: Poly, shift: int = 0) -> "Laurent":
        return cls({k + shift: c for k, c in enumerate(p.coeffs)})

    @classmethod
    def monomial(cls, e: int, c=1) -> "Laurent":
        return cls({e: to_rat(c)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {rat_str(c)}" for e, c in sorted(self.terms.items()))
        return f"Laurent({{{body}}})"

    def coeff(self, e: int) -> Fraction:
        return self.terms.get(e, Fraction(0))

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, Poly):
            other = Laurent.from_poly(other)
        if not isinstance(other, Laurent):
            c = Fraction(other)
            return Laurent({e: c * v for e, v in self.terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def min_exp(self) -> int | None:
        return min(self.terms) if self.terms else None

    def max_exp(self) -> int | None:
        return max(self.terms) if self.terms else None

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self.terms.items()), Fraction(0))


# --------------------------------------------------------- bivariate (t, y)


class BiPoly:
    """Sparse polynomial in (t, y); keys are ``(t_degree, y_degree)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        self.terms: dict[tuple[int, int], Fraction] = {
            (int(i), int(j)): Fraction(c) for (i, j), c in items if c != 0
        }

    @classmethod
    def from_y_coeffs(cls, coeffs: Sequence[Poly]) -> "BiPoly":
        """``coeffs[j]`` is the Q[t] coefficient of y**j."""
        terms = {}
        for j, p in enumerate(coeffs):
            for i, c in enumerate(p.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls(terms)

    def y_coeffs(self) -> list[Poly]:
        dy = self.deg_y
        cols: list[list[Fraction]] = [[] for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            col = cols[j]
            if len(col) <= i:
                col.extend([Fraction(0)] * (i + 1 - len(col)))
            col[i] = c
        return [Poly(c) for c in cols]

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def deg_t(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BiPoly({self.to_string()})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            c = Fraction(other)
            return BiPoly({k: c * v for k, v in self.terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def diff_y(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def diff_t(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def at_t(self, t0) -> Poly:
        """Specialize t = t0, returning a polynomial in y."""
        return Poly(p(Fraction(t0)) for p in self.y_coeffs())

    def __call__(self, t0, y0) -> Fraction:
        t0, y0 = Fraction(t0), Fraction(y0)
        return sum((c * t0**i * y0**j for (i, j), c in self.terms.items()), Fraction(0))

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("t" if i == 1 else f"t^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if s
            )
            if not mono:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[list[str]]:
        """Coefficient arrays of y**0, y**1, ... (each lowest t-degree first)."""
        return [p.to_json() for p in self.y_coeffs()]


# ----------------------------------------------------- determinants (domain)


def bareiss_det(matrix: Sequence[Sequence], one=None):
    """Fraction-free determinant over any exact integral domain.

    Entries may be ints, Fractions or Polys; exact division uses ``//`` for
    Polys and true division otherwise.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one if one is not None else Fraction(1)
    is_poly = isinstance(m[0][0], Poly)

    def div(a, b):
        return a.exact_div(b) if is_poly else a / b

    sign = 1
    prev = Poly([1]) if is_poly else Fraction(1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return Poly() if is_poly else Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of two coefficient lists (lowest degree first)."""
    m, n = len(f) - 1, len(g) - 1
    zero = f[0] * 0
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant_y(F: BiPoly, G: BiPoly) -> Poly:
    """Res_y(F, G) in Q[t] as the Sylvester determinant."""
    if not F or not G:
        raise InvalidInputError("resultant of a zero polynomial")
    fc, gc = F.y_coeffs(), G.y_coeffs()
    if len(fc) == 1 and len(gc) == 1:
        return Poly([1])
    if len(fc) == 1:
        return fc[0] ** (len(gc) - 1)
    if len(gc) == 1:
        return gc[0] ** (len(fc) - 1)
    return bareiss_det(sylvester_matrix(fc, gc))


# ------------------------------------------------------- sparse elimination


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g or 1


def _to_int_row(row) -> dict[int, int]:
    items = row.items() if isinstance(row, dict) else enumerate(row)
    items = [(k, Fraction(v)) for k, v in items if v]
    if not items:
        return {}
    den = reduce(math.lcm, (v.denominator for _, v in items), 1)
    out = {k: int(v * den) for k, v in items}
    g = _content(out)
    if g != 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _gauss_jordan(rows: list[dict[int, int]], ncols: int):
    """Integer Gauss-Jordan; returns pivot rows and their pivot columns."""
    active = [r for r in rows if r]
    pivots: list[tuple[int, dict[int, int]]] = []
    for c in range(ncols):
        best = None
        for idx, r in enumerate(active):
            if c in r and (best is None or len(r) < len(active[best])):
                best = idx
        if best is None:
            continue
        piv = active.pop(best)
        pv = piv[c]

        def eliminate(r: dict[int, int]) -> dict[int, int]:
            f = r[c]
            out = {k: v * pv for k, v in r.items()}
            for k, v in piv.items():
                nv = out.get(k, 0) - f * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            g = _content(out)
            return {k: v // g for k, v in out.items()} if g != 1 else out

        active = [eliminate(r) if c in r else r for r in active]
        active = [r for r in active if r]
        pivots = [(pc, eliminate(r) if c in r else r) for pc, r in pivots]
        pivots.append((c, piv))
    return pivots


def rref(matrix: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form: (rows as Fraction lists, pivot columns)."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    piv = _gauss_jordan([_to_int_row(r) for r in matrix], ncols)
    out = []
    cols = []
    for c, r in piv:
        pv = r[c]
        dense = [Fraction(0)] * ncols
        for k, v in r.items():
            dense[k] = Fraction(v, pv)
        out.append(dense)
        cols.append(c)
    return out, cols


def sparse_kernel(rows: list, ncols: int) -> tuple[int, list[dict[int, Fraction]]]:
    """Rank and sparse kernel basis of a matrix given by (sparse) rows."""
    piv = _gauss_jordan([_to_int_row(r) for r in rows], ncols)
    pcols = {c for c, _ in piv}
    basis = []
    for f in range(ncols):
        if f in pcols:
            continue
        vec = {f: Fraction(1)}
        for c, r in piv:
            v = r.get(f)
            if v:
                vec[c] = Fraction(-v, r[c])
        basis.append(vec)
    return len(piv), basis


def mat_kernel(matrix: Sequence[Sequence], ncols: int | None = None):
    """Rank and kernel basis (dense Fraction vectors) of a rational matrix."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rank, basis = sparse_kernel(list(matrix), ncols)
    dense = []
    for vec in basis:
        d = [Fraction(0)] * ncols
        for k, v in vec.items():
            d[k] = v
        dense.append(d)
    return rank, dense


def mat_rank(matrix: Sequence[Sequence], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return len(_gauss_jordan([_to_int_row(r) for r in matrix], ncols))


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def _dot(u: Sequence, v: Sequence):
    return reduce(lambda acc, xy: acc + xy[0] * xy[1], zip(u[1:], v[1:]), u[0] * v[0])


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_inv(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(map(Fraction, row)) + e for row, e in zip(matrix, identity(n))]
    red, cols = rref(aug, 2 * n)
    if cols[:n] != list(range(n)) or len(cols) < n:
        raise InvalidInputError("matrix is not invertible")
    return [row[n:] for row in red[:n]]


def mat_det(matrix: Sequence[Sequence]) -> Fraction:
    return bareiss_det([[Fraction(x) for x in row] for row in matrix])


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """A particular solution X of A X = B, or None when inconsistent."""
    m = len(a)
    n = len(a[0]) if m else 0
    k = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, cols = rref(aug, n + k)
    if any(c >= n for c in cols):
        return None
    x = [[Fraction(0)] * k for _ in range(n)]
    for row, c in zip(red, cols):
        x[c] = row[n:]
    return x


def column_space_rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a family of vectors."""
    if not vectors:
        return 0
    return mat_rank(list(vectors), len(vectors[0]))


def charpoly(matrix: Sequence[Sequence]) -> Poly:
    """det(y*Id - A) for a rational matrix, as a Poly in y."""
    n = len(matrix)
    m = [[Poly([-Fraction(x)]) if i != j else Poly([-Fraction(x), 1])
          for j, x in enumerate(row)] for i, row in enumerate(matrix)]
    return bareiss_det(m) if n else Poly([1])


def poly_matrix_eval(matrix: Sequence[Sequence[Poly]], t0) -> list[list[Fraction]]:
    return [[p(Fraction(t0)) for p in row] for row in matrix]


# --------------------------------------------- polynomial-matrix kernels


def poly_content(vec: Sequence[Poly]) -> Poly:
    return reduce(poly_gcd, (p for p in vec if p), Poly())


def poly_mat_kernel(matrix: Sequence[Sequence[Poly]], ncols: int) -> list[list[Poly]]:
    """Basis of the Q(t)-kernel with polynomial, content-free vectors."""
    rows = [list(r) for r in matrix if any(r)]
    pivots: list[tuple[int, list[Poly]]] = []
    for c in range(ncols):
        idx = next((i for i, r in enumerate(rows) if r[c]), None)
        if idx is None:
            continue
        piv = rows.pop(idx)
        pv = piv[c]

        def elim(r: list[Poly]) -> list[Poly]:
            f = r[c]
            out = [a * pv - f * b for a, b in zip(r, piv)]
            g = poly_content(out)
            return [a // g for a in out] if g and g.degree > 0 else out

        rows = [elim(r) if r[c] else r for r in rows]
        rows = [r for r in rows if any(r)]
        pivots = [(pc, elim(r) if r[c] else r) for pc, r in pivots]
        pivots.append((c, piv))
    pcols = {c for c, _ in pivots}
    basis = []
    for f in range(ncols):
        if f in pcols:
            continue
        den = reduce(poly_lcm, (r[c] for c, r in pivots if r[f]), Poly([1]))
        vec = [Poly() for _ in range(ncols)]
        vec[f] = den
        for c, r in pivots:
            if r[f]:
                vec[c] = -(r[f] * den // r[c])
        g = poly_content(vec)
        basis.append([p // g for p in vec])
    return basis


# --------------------------------------------------- residue fields Q[t]/(m)


class ResidueField:
    """Arithmetic in Q[t]/(m) for an irreducible modulus ``m``."""

    def __init__(self, modulus: Poly):
        if modulus.degree < 1:
            raise InvalidInputError("residue field modulus must be nonconstant")
        self.modulus = modulus.monic()

    def reduce(self, p: Poly) -> Poly:
        return p % self.modulus

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus

    def inv(self, a: Poly) -> Poly:
        r0, r1 = self.modulus, a % self.modulus
        s0, s1 = Poly(), Poly([1])
        if not r1:
            raise ZeroDivisionError("inverse of zero in residue field")
        while r1.degree > 0:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            if not r1:
                raise ZeroDivisionError("modulus is not irreducible")
        return (s1 * (1 / r1.coeffs[0])) % self.modulus

    def poly_rem(self, a: list[Poly], b: list[Poly]) -> list[Poly]:
        """Remainder of a by b in K[y]; lists are lowest y-degree first."""
        a = _strip_k(a)
        b = _strip_k(b)
        inv = self.inv(b[-1])
        a = list(a)
        while len(a) >= len(b) and a:
            c = self.mul(a[-1], inv)
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = self.reduce(a[shift + j] - c * bj)
            a = _strip_k(a)
        return a

    def poly_gcd(self, *polys: list[Poly]) -> list[Poly]:
        """Monic gcd in K[y] of the given polynomials."""
        g: list[Poly] = []
        for p in polys:
            a, b = g, _strip_k([self.reduce(c) for c in p])
            while b:
                a, b = b, self.poly_rem(a, b)
            g = a
        if not g:
            return []
        inv = self.inv(g[-1])
        return [self.mul(c, inv) for c in g]

    def kernel(self, matrix: list[list[Poly]], ncols: int) -> list[list[Poly]]:
        """Kernel basis of a matrix over this field."""
        rows = [[self.reduce(x) for x in r] for r in matrix]
        pivots: list[tuple[int, list[Poly]]] = []
        for c in range(ncols):
            idx = next((i for i, r in enumerate(rows) if r[c]), None)
            if idx is None:
                continue
            piv = rows.pop(idx)
            inv = self.inv(piv[c])
            piv = [self.mul(x, inv) for x in piv]

            def elim(r):
                f = r[c]
                return [self.reduce(a - f * b) for a, b in zip(r, piv)]

            rows = [elim(r) if r[c] else r for r in rows]
            pivots = [(pc, elim(r) if r[c] else r) for pc, r in pivots]
            pivots.append((c, piv))
        pcols = {c for c, _ in pivots}
        basis = []
        for f in range(ncols):
            if f in pcols:
                continue
            vec = [Poly() for _ in range(ncols)]
            vec[f] = Poly([1])
            for c, r in pivots:
                vec[c] = -r[f]
            basis.append(vec)
        return basis


def _strip_k(p: list[Poly]) -> list[Poly]:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p
