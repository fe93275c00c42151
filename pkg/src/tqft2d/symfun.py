"""Partitions, symmetric and supersymmetric Schur functions.

Variable lists may be given as names or as single-variable polynomials.
Every polynomial result lives over the variables passed in, x's before y's.
Conventions: ``h_0 = e_0 = 1``, ``h_k = e_k = 0`` for ``k < 0`` and ``e_k = 0``
once ``k`` exceeds the number of variables.

Functions that accept ``at=`` evaluate exactly at a rational point instead
of expanding; this is the only practical route once the polynomial has
millions of terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import HookViolation, ParseError, PreconditionViolation, SizeLimit
from .exact import MultiPoly, PolyMatrix, det_fraction_free
from .exact.linalg import numeric_det
from .exact.poly import Terms, t_add, t_divexact, t_mul

PERM_LIMIT = 5
EVAL_PERM_LIMIT = 6


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        try:
            parts = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise ParseError(f"bad partition text {text!r}", token=text) from None
        try:
            return cls(parts)
        except ValueError as exc:
            raise ParseError(str(exc), token=text) from None

    def __str__(self):
        return ",".join(map(str, self.parts))

    def __len__(self):
        return len(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """The ``i``-th part, 1-based, zero past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def cells(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, p in enumerate(self.parts, 1) for j in range(1, p + 1)]


def partitions_of(n: int, max_part: Optional[int] = None) -> Iterable[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    max_part = n if max_part is None else max_part

    def rec(n, m):
        if n == 0:
            yield ()
            return
        for p in range(min(n, m), 0, -1):
            for rest in rec(n - p, p):
                yield (p,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


# ---------------------------------------------------------------------------
# variables


def _names(vars: Sequence[object]) -> Tuple[str, ...]:
    out = []
    for v in vars:
        if isinstance(v, str):
            out.append(v)
        elif isinstance(v, MultiPoly) and len(v.terms) == 1:
            (e, c), = v.terms.items()
            if c != 1 or sum(e) != 1:
                raise ValueError(f"{v} is not a single variable")
            out.append(v.vars[e.index(1)])
        else:
            raise ValueError(f"{v!r} is not a variable")
    if len(set(out)) != len(out):
        raise ValueError(f"repeated variables in {out}")
    return tuple(out)


def _unit(n: int, i: int) -> Tuple[int, ...]:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def elementary(k: int, vars: Sequence[object]) -> MultiPoly:
    names = _names(vars)
    n = len(names)
    if k < 0 or k > n:
        return MultiPoly.const(0, names)
    terms = {}
    for combo in combinations(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = 1
    return MultiPoly._raw(names, terms)


def complete(k: int, vars: Sequence[object]) -> MultiPoly:
    names = _names(vars)
    n = len(names)
    if k < 0 or (n == 0 and k > 0):
        return MultiPoly.const(0, names)
    terms = {}
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = 1
    return MultiPoly._raw(names, terms)


def jacobi_trudi(lam: Partition, h: Callable[[int], MultiPoly], vars: Sequence[str] = ()) -> MultiPoly:
    """``det(h(lam_i - i + j))`` for an arbitrary sequence ``h`` with ``h(0) = 1``."""
    n = lam.length()
    if n == 0:
        return MultiPoly.const(1, vars)
    m = PolyMatrix([[h(lam.part(i) - i + j) for j in range(1, n + 1)] for i in range(1, n + 1)], vars)
    return det_fraction_free(m).embed(_merge(vars, m.vars))


def _merge(a, b):
    seen = set(a)
    return tuple(a) + tuple(v for v in b if v not in seen)


def schur_jt(lam: Partition, vars: Sequence[object]) -> MultiPoly:
    names = _names(vars)
    return jacobi_trudi(lam, lambda k: complete(k, names), names).embed(names)


def _alternant(exps: Sequence[int], names: Tuple[str, ...]) -> Terms:
    n = len(names)
    out: Terms = {}
    for perm in permutations(range(n)):
        out[tuple(exps[perm[i]] for i in range(n))] = _perm_sign(perm)
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def schur_bialternant(lam: Partition, vars: Sequence[object]) -> MultiPoly:
    """Alternant of ``x^(lam + delta)`` divided exactly by the Vandermonde."""
    names = _names(vars)
    n = len(names)
    if lam.length() > n:
        raise PreconditionViolation(f"{lam} has more than {n} rows")
    if n > PERM_LIMIT + 1:
        raise SizeLimit(f"bialternant over {n} variables")
    if n == 0:
        return MultiPoly.const(1)
    num = _alternant([lam.part(i + 1) + n - 1 - i for i in range(n)], names)
    den = _alternant([n - 1 - i for i in range(n)], names)
    return MultiPoly(names, t_divexact(num, den))


def super_complete(n: int, xs: Sequence[object], ys: Sequence[object]) -> MultiPoly:
    """``h_n(x/y) = sum_i h_{n-i}(x) e_i(y)``."""
    xn, yn = _names(xs), _names(ys)
    names = xn + yn
    acc = MultiPoly.const(0, names)
    if n < 0:
        return acc
    for i in range(0, min(n, len(yn)) + 1):
        acc = acc + complete(n - i, xn).embed(names) * elementary(i, yn).embed(names)
    return acc


def _numeric_super_complete(upto: int, xv: Sequence[Fraction], yv: Sequence[Fraction]) -> List[Fraction]:
    """h_0..h_upto(x/y) at a point, from prod(1+y t)/prod(1-x t)."""
    coeffs = [Fraction(1)] + [Fraction(0)] * upto
    for y in yv:
        for k in range(upto, 0, -1):
            coeffs[k] += y * coeffs[k - 1]
    for x in xv:
        for k in range(1, upto + 1):
            coeffs[k] += x * coeffs[k - 1]
    return coeffs


def _point_values(names: Sequence[str], at: Mapping[str, object]) -> List[Fraction]:
    try:
        return [Fraction(at[v]) for v in names]
    except KeyError as exc:
        raise ValueError(f"no value given for variable {exc.args[0]}") from None


def super_schur_jt(lam: Partition, xs: Sequence[object], ys: Sequence[object],
                   at: Optional[Mapping[str, object]] = None):
    """``det(h_{lam_i - i + j}(x/y))``; vanishes off the (M, N)-hook."""
    xn, yn = _names(xs), _names(ys)
    n = lam.length()
    if at is not None:
        if n == 0:
            return Fraction(1)
        top = lam.part(1) + n
        h = _numeric_super_complete(top, _point_values(xn, at), _point_values(yn, at))
        hv = lambda k: h[k] if 0 <= k <= top else Fraction(0)
        return numeric_det([[hv(lam.part(i) - i + j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    names = xn + yn
    cache: Dict[int, MultiPoly] = {}

    def h(k):
        if k not in cache:
            cache[k] = super_complete(k, xn, yn)
        return cache[k]

    return jacobi_trudi(lam, h, names).embed(names)


def fits_hook(lam: Partition, M: int, N: int) -> bool:
    return lam.part(M + 1) <= N


@dataclass(frozen=True)
class HookDecomposition:
    kappa: Partition
    tau: Partition
    eta: Partition
    eta_conjugate: Partition


def hook_decompose(lam: Partition, M: int, N: int) -> HookDecomposition:
    """Split a hook partition into the part inside the M x N rectangle,
    the arm to its right (tau) and the leg below it (eta)."""
    if not fits_hook(lam, M, N):
        raise HookViolation(f"{lam} does not fit the ({M},{N})-hook")
    kappa = Partition(tuple(min(lam.part(i), N) for i in range(1, M + 1)))
    tau = Partition(tuple(max(lam.part(i) - N, 0) for i in range(1, M + 1)))
    eta = Partition(lam.parts[M:])
    return HookDecomposition(kappa, tau, eta, eta.conjugate())


def _sp_kernel(lam: Partition, M: int, N: int):
    """Exponents of x and y and the cell list of kappa for the SP summand."""
    d = hook_decompose(lam, M, N)
    ax = [d.tau.part(i + 1) + M - 1 - i for i in range(M)]
    by = [d.eta_conjugate.part(j + 1) + N - 1 - j for j in range(N)]
    return ax, by, [(i - 1, j - 1) for i, j in d.kappa.cells()]


def sergeev_pragacz(lam: Partition, xs: Sequence[object], ys: Sequence[object],
                    at: Optional[Mapping[str, object]] = None):
    """Signed sum over S_M x S_N of the permuted SP summand, divided exactly
    by the product of the two Vandermonde determinants."""
    xn, yn = _names(xs), _names(ys)
    M, N = len(xn), len(yn)
    ax, by, cells = _sp_kernel(lam, M, N)
    if at is not None:
        if max(M, N) > EVAL_PERM_LIMIT:
            raise SizeLimit(f"Sergeev-Pragacz evaluation with M={M}, N={N}")
        xv, yv = _point_values(xn, at), _point_values(yn, at)
        total = Fraction(0)
        for px in permutations(range(M)):
            sx = _perm_sign(px)
            x = [xv[p] for p in px]
            fx = Fraction(1)
            for i in range(M):
                fx *= x[i] ** ax[i]
            for py in permutations(range(N)):
                y = [yv[p] for p in py]
                f = fx * sx * _perm_sign(py)
                for j in range(N):
                    f *= y[j] ** by[j]
                for i, j in cells:
                    f *= x[i] + y[j]
                total += f
        vx = Fraction(1)
        for i in range(M):
            for j in range(i + 1, M):
                vx *= xv[i] - xv[j]
        for i in range(N):
            for j in range(i + 1, N):
                vx *= yv[i] - yv[j]
        return total / vx
    if max(M, N) > PERM_LIMIT:
        raise SizeLimit(f"symbolic Sergeev-Pragacz with M={M}, N={N}; evaluate with at= instead")
    names = xn + yn
    nv = M + N
    # summand x^ax y^by prod_{cells}(x_i + y_j)
    base: Terms = {tuple(ax) + tuple(by): 1}
    for i, j in cells:
        base = t_mul(base, {_unit(nv, i): 1, _unit(nv, M + j): 1})
    # antisymmetrize: every term contributes sgn * alternant of its sorted exponents
    alt: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    for e, c in base.items():
        ex, ey = e[:M], e[M:]
        if len(set(ex)) < M or len(set(ey)) < N:
            continue
        sx = _sort_sign(ex)
        sy = _sort_sign(ey)
        key = (tuple(sorted(ex, reverse=True)), tuple(sorted(ey, reverse=True)))
        alt[key] = alt.get(key, 0) + c * sx * sy
    signed: Terms = {}
    for (mx, my), c in alt.items():
        if not c:
            continue
        ax_terms = _alternant(mx, xn)
        ay_terms = _alternant(my, yn)
        for e1, s1 in ax_terms.items():
            for e2, s2 in ay_terms.items():
                e = e1 + e2
                v = signed.get(e, 0) + c * s1 * s2
                if v:
                    signed[e] = v
                else:
                    del signed[e]
    dx = _alternant([M - 1 - i for i in range(M)], xn) if M else {(): 1}
    dy = _alternant([N - 1 - i for i in range(N)], yn) if N else {(): 1}
    d0 = {a + b: s * t for a, s in dx.items() for b, t in dy.items()}
    return MultiPoly(names, t_divexact(signed, d0))


def _sort_sign(e: Sequence[int]) -> int:
    order = sorted(range(len(e)), key=lambda i: -e[i])
    return _perm_sign(order)


def super_schur_product_form(lam: Partition, xs: Sequence[object], ys: Sequence[object]) -> MultiPoly:
    """``s_tau(x) s_eta'(y) prod(x_i + y_j)``, valid when lam contains the M x N rectangle."""
    xn, yn = _names(xs), _names(ys)
    M, N = len(xn), len(yn)
    if M and lam.part(M) < N:
        raise PreconditionViolation(f"{lam} does not contain the {M}x{N} rectangle")
    d = hook_decompose(lam, M, N)
    names = xn + yn
    out = schur_jt(d.tau, xn).embed(names) * schur_jt(d.eta_conjugate, yn).embed(names)
    for x in xn:
        for y in yn:
            out = out * (MultiPoly.var(x, names) + MultiPoly.var(y, names))
    return out
