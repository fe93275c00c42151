"""Coloring-sum evaluation of theta-foams, overlapping foams and the Day foam.

Foams are described combinatorially: thin facets with dot counts, the
incidence pattern of overlap circles between facets of the two foams, and
the variables attached to facets.  Every evaluation below is a literal sum
over colorings; the Vandermonde-type denominators are divided out exactly.

Orientation convention: facets are ordered so that theta-type evaluations
return the positive Schur or supersymmetric Schur function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DegenerateInstance, HookViolation, PreconditionViolation, SizeLimit
from .exact import MultiPoly, PolyMatrix, det_fraction_free
from .exact.poly import Terms, t_add, t_divexact, t_mul
from .symfun import Partition, _names, fits_hook, hook_decompose

THETA_LIMIT = 6
OVERLAP_COLORING_LIMIT = factorial(10)
# expanding a symbolic coloring sum is only practical for small foams
OVERLAP_SYMBOLIC_LIMIT = 720


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _unit(nv: int, i: int) -> Tuple[int, ...]:
    e = [0] * nv
    e[i] = 1
    return tuple(e)


def _difference_product(idx: Sequence[int], nv: int) -> Terms:
    """``prod_{a<b} (v_a - v_b)`` over the given variable positions."""
    out: Terms = {(0,) * nv: 1}
    for a, b in combinations(idx, 2):
        out = t_mul(out, {_unit(nv, a): 1, _unit(nv, b): -1})
    return out


def _divide_checked(num: Terms, den: Terms) -> Terms:
    # t_divexact raises NonExactDivision on a remainder
    return t_divexact(num, den) if num else {}


# ---------------------------------------------------------------------------
# theta-foams


@dataclass(frozen=True)
class ThetaFoam:
    """GL(M) theta-foam with ``mu_i + M - i`` dots on thin facet i."""

    M: int
    mu: Partition

    def __post_init__(self):
        if self.mu.length() > self.M:
            raise PreconditionViolation(f"{self.mu} has more than {self.M} parts")

    @property
    def dots(self) -> Tuple[int, ...]:
        return tuple(self.mu.part(i) + self.M - i for i in range(1, self.M + 1))


def theta_eval(f: ThetaFoam, vars: Optional[Sequence[object]] = None) -> MultiPoly:
    """Sum over the M! colorings of thin facets, divided by the Vandermonde."""
    M = f.M
    if M > THETA_LIMIT:
        raise SizeLimit(f"theta-foam of thickness {M}")
    names = _names(vars) if vars is not None else tuple(f"x{i}" for i in range(1, M + 1))
    if len(names) != M:
        raise PreconditionViolation(f"{len(names)} variables for thickness {M}")
    dots = f.dots
    num: Terms = {}
    for sigma in permutations(range(M)):
        e = [0] * M
        for facet, color in enumerate(sigma):
            e[color] = dots[facet]
        num = t_add(num, {tuple(e): _perm_sign(sigma)})
    return MultiPoly(names, _divide_checked(num, _difference_product(range(M), M)))


# ---------------------------------------------------------------------------
# overlapping theta-foams


@dataclass(frozen=True)
class OverlapThetaFoam:
    """GL(M) and GL(N) theta-foams overlapping along the cells of kappa."""

    M: int
    N: int
    lam: Partition

    def __post_init__(self):
        if not fits_hook(self.lam, self.M, self.N):
            raise HookViolation(f"{self.lam} does not fit the ({self.M},{self.N})-hook")

    @property
    def kappa_pattern(self) -> Tuple[Tuple[int, int], ...]:
        """Pairs (i, j), 1-based, with facets f'_i and f''_j meeting in a circle."""
        return tuple(hook_decompose(self.lam, self.M, self.N).kappa.cells())

    @property
    def x_dots(self) -> Tuple[int, ...]:
        tau = hook_decompose(self.lam, self.M, self.N).tau
        return tuple(tau.part(i) + self.M - i for i in range(1, self.M + 1))

    @property
    def y_dots(self) -> Tuple[int, ...]:
        eta_c = hook_decompose(self.lam, self.M, self.N).eta_conjugate
        return tuple(eta_c.part(j) + self.N - j for j in range(1, self.N + 1))


def _overlap_names(f: OverlapThetaFoam, xs, ys):
    xn = _names(xs) if xs is not None else tuple(f"x{i}" for i in range(1, f.M + 1))
    yn = _names(ys) if ys is not None else tuple(f"y{j}" for j in range(1, f.N + 1))
    if len(xn) != f.M or len(yn) != f.N:
        raise PreconditionViolation("variable counts must match the foam thicknesses")
    return xn, yn


def overlap_theta_eval(f: OverlapThetaFoam, xs: Optional[Sequence[object]] = None,
                       ys: Optional[Sequence[object]] = None,
                       at: Optional[Mapping[str, object]] = None):
    """Sum over colorings (s', s'') of sign * dots * prod over overlap circles
    of ``(x_{s'(i)} + y_{s''(j)})``, divided by both Vandermondes.

    With ``at`` every coloring is evaluated at the rational point instead.
    """
    M, N = f.M, f.N
    colorings = factorial(M) * factorial(N)
    if colorings > OVERLAP_COLORING_LIMIT:
        raise SizeLimit(f"{colorings} colorings")
    xn, yn = _overlap_names(f, xs, ys)
    cells = [(i - 1, j - 1) for i, j in f.kappa_pattern]
    xd, yd = f.x_dots, f.y_dots
    if at is not None:
        return _overlap_at(M, N, cells, xd, yd, xn, yn, at)
    if colorings > OVERLAP_SYMBOLIC_LIMIT:
        raise SizeLimit(f"{colorings} colorings is too many to expand symbolically; pass at=")
    names = xn + yn
    nv = M + N
    lin = {(a, b): {_unit(nv, a): 1, _unit(nv, M + b): 1} for a in range(M) for b in range(N)}
    num: Terms = {}
    for sx in permutations(range(M)):
        gx = _perm_sign(sx)
        for sy in permutations(range(N)):
            e = [0] * nv
            for i, c in enumerate(sx):
                e[c] = xd[i]
            for j, c in enumerate(sy):
                e[M + c] = yd[j]
            term: Terms = {tuple(e): gx * _perm_sign(sy)}
            for i, j in cells:
                term = t_mul(term, lin[(sx[i], sy[j])])
            num = t_add(num, term)
    den = t_mul(_difference_product(range(M), nv), _difference_product(range(M, nv), nv))
    return MultiPoly(names, _divide_checked(num, den))


def _overlap_at(M, N, cells, xd, yd, xn, yn, at) -> Fraction:
    try:
        xv = [Fraction(at[v]) for v in xn]
        yv = [Fraction(at[v]) for v in yn]
    except KeyError as exc:
        raise PreconditionViolation(f"no value given for {exc.args[0]}") from None
    den = Fraction(1)
    for vals in (xv, yv):
        for a, b in combinations(vals, 2):
            den *= a - b
    if den == 0:
        raise DegenerateInstance("evaluation point has repeated coordinates")
    total = Fraction(0)
    for sx in permutations(range(M)):
        gx = _perm_sign(sx)
        px = Fraction(gx)
        for i, c in enumerate(sx):
            px *= xv[c] ** xd[i]
        for sy in permutations(range(N)):
            t = px * _perm_sign(sy)
            for j, c in enumerate(sy):
                t *= yv[c] ** yd[j]
            for i, j in cells:
                t *= xv[sx[i]] + yv[sy[j]]
            total += t
    return total / den


# ---------------------------------------------------------------------------
# overlapping spheres and resultants


def sphere_overlap_eval(M: int, N: int, sign_mode: str = "plus",
                        xs: Optional[Sequence[object]] = None,
                        ys: Optional[Sequence[object]] = None) -> MultiPoly:
    """Thick spheres of thickness M and N overlapping in one circle.

    The single coloring puts every pair of colors on the overlap circle;
    each pair contributes ``x_i + y_j`` (plus) or ``x_i - y_j`` (minus).
    """
    if M < 1 or N < 1:
        raise PreconditionViolation("thicknesses must be positive")
    if sign_mode not in ("plus", "minus"):
        raise PreconditionViolation(f"sign mode {sign_mode!r}")
    xn = _names(xs) if xs is not None else tuple(f"x{i}" for i in range(1, M + 1))
    yn = _names(ys) if ys is not None else tuple(f"y{j}" for j in range(1, N + 1))
    names = xn + yn
    nv = M + N
    s = 1 if sign_mode == "plus" else -1
    out: Terms = {(0,) * nv: 1}
    for i in range(M):
        for j in range(N):
            out = t_mul(out, {_unit(nv, i): 1, _unit(nv, M + j): s})
    return MultiPoly(names, out)


def sylvester_matrix(f: Sequence[object], g: Sequence[object]) -> PolyMatrix:
    """Sylvester matrix of two coefficient lists, highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return PolyMatrix(rows)


def sylvester_resultant(f: Sequence[object], g: Sequence[object]) -> MultiPoly:
    """``det Syl(f, g)``; for monic f, g this is ``prod (root_f - root_g)``."""
    if len(f) < 1 or len(g) < 1:
        raise PreconditionViolation("empty coefficient list")
    if len(f) == 1 and len(g) == 1:
        return MultiPoly.const(1)
    return det_fraction_free(sylvester_matrix(f, g))


def monic_from_roots_coeffs(names: Sequence[str]) -> List[MultiPoly]:
    """Coefficients of ``prod (t - v)``: ``1, -e_1, e_2, ...``."""
    from .symfun import elementary
    return [elementary(i, names) * (-1) ** i for i in range(len(names) + 1)]


def generic_sylvester_resultant(M: int, N: int) -> MultiPoly:
    """Resultant of ``t^M + a1 t^(M-1) + ..`` and ``t^N + b1 t^(N-1) + ..``."""
    a = [MultiPoly.const(1)] + [MultiPoly.var(f"a{i}") for i in range(1, M + 1)]
    b = [MultiPoly.const(1)] + [MultiPoly.var(f"b{j}") for j in range(1, N + 1)]
    return sylvester_resultant(a, b)


def resultant_of_roots(xs: Sequence[str], ys: Sequence[str]) -> MultiPoly:
    """``det Syl(prod (t - x), prod (t - y))`` in the roots.

    Eliminating with elementary symmetric entries swells badly, so the
    determinant is taken over generic coefficients and then specialized;
    specialization is a ring map, so it commutes with the determinant.
    """
    M, N = len(xs), len(ys)
    fx, gy = monic_from_roots_coeffs(xs), monic_from_roots_coeffs(ys)
    mapping = {f"a{i}": fx[i] for i in range(1, M + 1)}
    mapping.update({f"b{j}": gy[j] for j in range(1, N + 1)})
    return generic_sylvester_resultant(M, N).subs(mapping)


# ---------------------------------------------------------------------------
# Day foam


@dataclass(frozen=True)
class DayFoamInstance:
    """Roots ``r`` of G, ``delta`` of D, ``rho`` of F and the Toeplitz size ``n``."""

    r: Tuple[Fraction, ...]
    delta: Tuple[Fraction, ...]
    rho: Tuple[Fraction, ...]
    n: int

    def __init__(self, r, delta, rho, n: int):
        object.__setattr__(self, "r", tuple(Fraction(v) for v in r))
        object.__setattr__(self, "delta", tuple(Fraction(v) for v in delta))
        object.__setattr__(self, "rho", tuple(Fraction(v) for v in rho))
        object.__setattr__(self, "n", int(n))
        self._validate()

    @property
    def k(self) -> int:
        return len(self.delta)

    @property
    def h(self) -> int:
        return len(self.rho)

    @property
    def m(self) -> int:
        return len(self.r) - self.k

    def _validate(self):
        if self.n < 0:
            raise PreconditionViolation("n must be nonnegative")
        if self.m < 0 or self.m < self.h:
            raise PreconditionViolation(
                f"need deg G - deg D = m >= h; got m = {self.m}, h = {self.h}")
        if any(v == 0 for v in self.rho):
            raise PreconditionViolation("roots of F must be nonzero")
        if self.delta and self.rho and max(abs(d) for d in self.delta) >= min(abs(p) for p in self.rho):
            raise PreconditionViolation("annulus condition max|delta| < min|rho| fails")
        for name, vals in (("r", self.r), ("delta", self.delta), ("rho", self.rho)):
            if len(set(vals)) != len(vals):
                raise DegenerateInstance(f"repeated {name} root")
        if set(self.r) & (set(self.delta) | set(self.rho)):
            raise DegenerateInstance("a root of G coincides with a pole")


def day_coloring_weight(inst: DayFoamInstance, I: Sequence[int]) -> Fraction:
    """``T(I)``: the four-edge product over the (I, I-bar, delta, rho) square."""
    r = inst.r
    Ibar = [j for j in range(len(r)) if j not in I]
    w = Fraction(1)
    for i in I:
        for j in Ibar:
            w /= r[i] - r[j]
        for d in inst.delta:
            w *= r[i] - d
    for j in Ibar:
        for p in inst.rho:
            w *= p - r[j]
    for p in inst.rho:
        for d in inst.delta:
            w /= p - d
    return w


def day_foam_colorings(inst: DayFoamInstance) -> Fraction:
    """Foam evaluation: each m-subset I contributes ``(-1)^m T(I) prod_{i in I} r_i^(n+1)``."""
    total = Fraction(0)
    sign = -1 if inst.m % 2 else 1
    for I in combinations(range(len(inst.r)), inst.m):
        w = day_coloring_weight(inst, I)
        for i in I:
            w *= inst.r[i] ** (inst.n + 1)
        total += sign * w
    return total


def day_foam_eval(inst: DayFoamInstance) -> Fraction:
    """Toeplitz determinant predicted by the foam: ``(-1)^(m n)`` times the coloring sum."""
    value = day_foam_colorings(inst)
    return -value if (inst.m * inst.n) % 2 else value
