"""Fraction-free linear algebra over multivariate polynomial rings.

Rank is taken over the fraction field of the polynomial ring, so every
parameter is treated as transcendental.  Rank at special parameter values
goes through :func:`rank_at`, which substitutes first.

All elimination happens on raw term dictionaries with integer
coefficients: each row is scaled by the lcm of its denominators (this
changes neither the rank nor the right kernel) and Bareiss' exact-division
scheme keeps every intermediate entry a polynomial minor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Mapping, Optional, Sequence, Tuple

from ..errors import ShapeError
from .poly import MultiPoly, Terms, _union_vars, grlex_key, t_add, t_divexact, t_mul, t_scale

COFACTOR_LIMIT = 4


class PolyMatrix:
    """Dense rectangular grid of :class:`MultiPoly` over one variable tuple."""

    __slots__ = ("rows", "cols", "vars", "entries")

    def __init__(self, entries: Sequence[Sequence[object]], vars: Sequence[str] | None = None):
        grid = [list(r) for r in entries]
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if any(len(r) != cols for r in grid):
            raise ShapeError("rows of unequal length")
        all_vars: Tuple[str, ...] = tuple(vars) if vars is not None else ()
        for r in grid:
            for x in r:
                if isinstance(x, MultiPoly):
                    all_vars = _union_vars(all_vars, x.vars)
        self.rows = rows
        self.cols = cols
        self.vars = all_vars
        self.entries: Tuple[Tuple[MultiPoly, ...], ...] = tuple(
            tuple(
                x.embed(all_vars) if isinstance(x, MultiPoly) else MultiPoly.const(x, all_vars)
                for x in r
            )
            for r in grid
        )

    @classmethod
    def identity(cls, n: int, vars: Sequence[str] = ()) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], vars)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.vars)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.vars)

    def subs(self, mapping: Mapping[str, object]) -> "PolyMatrix":
        return PolyMatrix([[x.subs(mapping) for x in r] for r in self.entries])

    def evaluate(self, point: Mapping[str, object]) -> List[List[Fraction]]:
        return [[Fraction(x.evaluate(point)) for x in r] for r in self.entries]

    def mul_vector(self, v: Sequence[object]) -> List[MultiPoly]:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} against {self.cols} columns")
        out = []
        for r in self.entries:
            acc = MultiPoly.const(0, self.vars)
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def render(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def __repr__(self):
        return f"PolyMatrix({self.render()!r})"


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_cols: List[int]
    kernel: List[List[MultiPoly]]

    def __iter__(self):
        return iter((self.rank, self.pivot_cols, self.kernel))


# ---------------------------------------------------------------------------


def _integer_rows(m: PolyMatrix) -> Tuple[List[List[Terms]], List[int]]:
    """Scale each row to integer coefficients; returns rows and the scale factors."""
    rows = []
    scales = []
    for r in m.entries:
        den = 1
        for x in r:
            for c in x.terms.values():
                if isinstance(c, Fraction):
                    den = lcm(den, c.denominator)
        if den == 1:
            rows.append([dict(x.terms) for x in r])
        else:
            rows.append([{e: int(c * den) for e, c in x.terms.items()} for x in r])
        scales.append(den)
    return rows, scales


def _cofactor_det(a: List[List[Terms]], nvars: int) -> Terms:
    n = len(a)
    if n == 0:
        return {(0,) * nvars: 1}
    if n == 1:
        return a[0][0]
    if n == 2:
        return t_add(t_mul(a[0][0], a[1][1]), t_mul(a[0][1], a[1][0]), -1)
    out: Terms = {}
    for j in range(n):
        if not a[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        out = t_add(out, t_mul(a[0][j], _cofactor_det(minor, nvars)), -1 if j % 2 else 1)
    return out


def _size(t: Terms):
    return (len(t), max((sum(e) for e in t), default=0))


def _eliminate(a: List[List[Terms]], order: Sequence[int], nvars: int, jordan: bool):
    """Fraction-free elimination over the columns in ``order``.

    Returns ``(pivots, pivot_rows, last_pivot, sign)``.  With ``jordan`` the
    entries above each pivot are cleared too, so afterwards row ``i`` reads
    ``d * e_{pivots[i]}`` on pivot columns (``d`` the last pivot) and the
    non-pivot entries give the kernel directly.
    """
    nrows = len(a)
    one = {(0,) * nvars: 1}
    prev: Terms = one
    pivots: List[int] = []
    sign = 1
    r = 0
    live = list(order)  # columns that still need updating
    for c in order:
        if r == nrows:
            break
        best = None
        for p in range(r, nrows):
            x = a[p][c]
            if x and (best is None or _size(x) < _size(a[best][c])):
                best = p
                if len(x) == 1 and not any(next(iter(x))):
                    break
        live.remove(c)
        if best is None:
            if not jordan:
                continue
            live.append(c)  # skipped column stays part of the kernel data
            continue
        if best != r:
            a[r], a[best] = a[best], a[r]
            sign = -sign
        piv = a[r][c]
        row_r = a[r]
        targets = range(nrows) if jordan else range(r + 1, nrows)
        same = piv == prev
        for i in targets:
            if i == r:
                continue
            row_i = a[i]
            f = row_i[c]
            if not f:
                if same:
                    continue
                for j in live:
                    x = row_i[j]
                    if x:
                        row_i[j] = t_divexact(t_mul(piv, x), prev)
                continue
            for j in live:
                x = row_i[j]
                y = row_r[j]
                if y:
                    num = t_add(t_mul(piv, x), t_mul(f, y), -1) if x else t_scale(t_mul(f, y), -1)
                elif x:
                    num = t_mul(piv, x)
                else:
                    continue
                row_i[j] = t_divexact(num, prev) if num else {}
            row_i[c] = {}
        pivots.append(c)
        prev = piv
        r += 1
    return pivots, prev, sign


def det_fraction_free(m: PolyMatrix) -> MultiPoly:
    """Exact determinant; cofactor expansion up to 4x4, Bareiss beyond."""
    if m.rows != m.cols:
        raise ShapeError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    nv = len(m.vars)
    a, scales = _integer_rows(m)
    if n <= COFACTOR_LIMIT:
        d = _cofactor_det(a, nv)
    else:
        pivots, last, sign = _eliminate(a, range(n), nv, jordan=False)
        if len(pivots) < n:
            return MultiPoly.const(0, m.vars)
        d = t_scale(last, sign)
    scale = 1
    for s in scales:
        scale *= s
    if scale != 1:
        d = t_scale(d, Fraction(1, scale))
    return MultiPoly(m.vars, d)


def _poly_gcd_many(polys: List[Terms], nvars: int) -> Terms:
    import sympy

    gens = sympy.symbols(f"z0:{nvars}") if nvars else ()
    g = None
    for t in polys:
        p = sympy.Poly.from_dict({e: c for e, c in t.items()}, *gens, domain="ZZ")
        g = p if g is None else sympy.gcd(g, p)
        if g.is_ground:
            break
    return {tuple(e): int(c) for e, c in g.as_dict().items()}


def primitive_vector(v: List[Terms], nvars: int) -> List[Terms]:
    """Divide out integer, monomial and (when needed) polynomial content.

    The first nonzero entry is normalized to a positive leading coefficient.
    """
    nz = [t for t in v if t]
    if not nz:
        return v
    g = 0
    for t in nz:
        for c in t.values():
            g = gcd(g, int(c))
    mins = [min(e[i] for t in nz for e in t) for i in range(nvars)]
    divisor = {tuple(mins): g}
    v = [t_divexact(t, divisor) if t else {} for t in v]
    nz = [t for t in v if t]
    if nvars and all(len(t) > 1 for t in nz):
        pg = _poly_gcd_many(nz, nvars)
        if len(pg) > 1:
            v = [t_divexact(t, pg) if t else {} for t in v]
    first = next(t for t in v if t)
    if first[max(first, key=grlex_key)] < 0:
        v = [t_scale(t, -1) for t in v]
    return v


def rank_and_kernel(m: PolyMatrix, kernel: bool = True, pivot_order: Optional[Sequence[int]] = None) -> RankResult:
    """Rank over the fraction field, greedy pivot columns and a kernel basis.

    Columns are scanned in ``pivot_order`` (ascending by default); a column is
    a pivot exactly when it is independent of the pivots chosen before it.
    Kernel vectors, one per non-pivot column, have polynomial entries with
    content removed and satisfy ``m @ v == 0`` identically.
    """
    order = list(range(m.cols)) if pivot_order is None else list(pivot_order)
    if sorted(order) != list(range(m.cols)):
        raise ShapeError("pivot_order must be a permutation of the column indices")
    nv = len(m.vars)
    a, _ = _integer_rows(m)
    pivots, last, _ = _eliminate(a, order, nv, jordan=kernel)
    vecs: List[List[MultiPoly]] = []
    if kernel:
        pivot_set = set(pivots)
        for j in order:
            if j in pivot_set:
                continue
            v: List[Terms] = [{} for _ in range(m.cols)]
            v[j] = dict(last)
            for i, pc in enumerate(pivots):
                if a[i][j]:
                    v[pc] = t_scale(a[i][j], -1)
            v = primitive_vector(v, nv)
            vecs.append([MultiPoly(m.vars, t) for t in v])
    return RankResult(len(pivots), pivots, vecs)


def rank_at(m: PolyMatrix, point: Mapping[str, object], kernel: bool = False,
            pivot_order: Optional[Sequence[int]] = None) -> RankResult:
    """Rank after substituting rational values for some or all variables."""
    return rank_and_kernel(m.subs(point), kernel=kernel, pivot_order=pivot_order)


def numeric_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Plain Gaussian elimination over the rationals; an independent check."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det
