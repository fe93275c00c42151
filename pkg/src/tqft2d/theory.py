"""Generating-function theories and the state space of one circle.

A theory is fixed by its sequence of closed-surface values
``alpha_g = Z(S_g)``, packaged as a generating function ``Z(T)``.  The
variants below cover explicit prefixes, polynomials, rational functions
given by their roots (``prod(1 + b_i T) / prod(1 - g_j T)``) and rational
functions given by coefficient lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (
    InsufficientPrefix, ParseError, PrefixTooShort, PreconditionViolation, UndefinedBeyondPrefix,
)
from .exact import MultiPoly, PolyMatrix, TruncSeries, det_fraction_free, parse_poly
from .exact.poly import _union_vars, t_add, t_mul
from .symfun import Partition, complete, elementary, jacobi_trudi

PolyLike = Union[MultiPoly, int, Fraction, str]


def _poly(v: PolyLike) -> MultiPoly:
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, str):
        return parse_poly(v)
    return MultiPoly.const(v)


def _polys(vs) -> Tuple[MultiPoly, ...]:
    return tuple(_poly(v) for v in vs)


def _ring(polys: Sequence[MultiPoly]) -> Tuple[str, ...]:
    vars: Tuple[str, ...] = ()
    for p in polys:
        vars = _union_vars(vars, p.used_vars())
    return vars


class TheorySpec:
    """Common interface of the generating-function variants."""

    @property
    def ring(self) -> Tuple[str, ...]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def default_genus_cap(self) -> int:
        raise NotImplementedError

    def _alphas(self, upto: int) -> List[MultiPoly]:
        raise NotImplementedError


@dataclass(frozen=True)
class ExplicitSequence(TheorySpec):
    """A finite prefix of values; past the end either zeros or undefined."""

    values: Tuple[MultiPoly, ...]
    zero_extended: bool = True

    def __init__(self, values, zero_extended: bool = True):
        object.__setattr__(self, "values", _polys(values))
        object.__setattr__(self, "zero_extended", zero_extended)

    @property
    def ring(self):
        return _ring(self.values)

    def describe(self):
        tail = "" if self.zero_extended else ",..."
        return "seq " + ",".join(str(v) for v in self.values) + tail

    def default_genus_cap(self):
        if not self.zero_extended:
            raise PreconditionViolation("a sequence undefined past its prefix needs an explicit genus cap")
        nz = [i for i, v in enumerate(self.values) if v]
        return nz[-1] if nz else 0

    def _alphas(self, upto):
        if upto >= len(self.values) and not self.zero_extended:
            raise UndefinedBeyondPrefix(
                f"alpha_{upto} requested but only {len(self.values)} values are known")
        vals = list(self.values[: upto + 1])
        return vals + [MultiPoly.const(0)] * (upto + 1 - len(vals))


@dataclass(frozen=True)
class PolynomialGF(TheorySpec):
    """``Z(T) = sum_i coeffs[i] T^i``; any leading coefficient allowed."""

    coeffs: Tuple[MultiPoly, ...]

    def __init__(self, coeffs):
        cs = list(_polys(coeffs))
        while len(cs) > 1 and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def ring(self):
        return _ring(self.coeffs)

    def describe(self):
        if len(self.coeffs) == 1:
            return f"const {self.coeffs[0]}"
        return "poly " + ",".join(str(c) for c in self.coeffs)

    def default_genus_cap(self):
        return len(self.coeffs) - 1

    def _alphas(self, upto):
        vals = list(self.coeffs[: upto + 1])
        return vals + [MultiPoly.const(0)] * (upto + 1 - len(vals))


@dataclass(frozen=True)
class RationalByRoots(TheorySpec):
    """``prod_i (1 + beta_i T) / prod_j (1 - gamma_j T)``; normalized to Z(0) = 1."""

    beta: Tuple[MultiPoly, ...]
    gamma: Tuple[MultiPoly, ...]

    def __init__(self, beta=(), gamma=()):
        object.__setattr__(self, "beta", _polys(beta))
        object.__setattr__(self, "gamma", _polys(gamma))

    @classmethod
    def symbolic(cls, M: int, N: int, beta_prefix: str = "b", gamma_prefix: str = "g") -> "RationalByRoots":
        return cls([f"{beta_prefix}{i}" for i in range(1, N + 1)],
                   [f"{gamma_prefix}{j}" for j in range(1, M + 1)])

    @property
    def M(self):
        return len(self.gamma)

    @property
    def N(self):
        return len(self.beta)

    @property
    def ring(self):
        return _ring(self.beta + self.gamma)

    def describe(self):
        parts = ["rational"]
        if self.beta:
            parts.append("beta=" + ",".join(str(b) for b in self.beta))
        if self.gamma:
            parts.append("gamma=" + ",".join(str(g) for g in self.gamma))
        return " ".join(parts)

    def default_genus_cap(self):
        return max(self.N + 1, self.M) - 1

    def _alphas(self, upto):
        vars = self.ring
        one = {(0,) * len(vars): 1}
        # numerator prod(1 + b T), then multiply by each geometric series
        series: List[Dict] = [one] + [{} for _ in range(upto)]
        for b in self.beta:
            bt = b.embed(vars).terms
            for k in range(upto, 0, -1):
                series[k] = t_add(series[k], t_mul(bt, series[k - 1]))
        for g in self.gamma:
            gt = g.embed(vars).terms
            for k in range(1, upto + 1):
                series[k] = t_add(series[k], t_mul(gt, series[k - 1]))
        return [MultiPoly._raw(vars, t) for t in series]


@dataclass(frozen=True)
class RationalByCoeffs(TheorySpec):
    """``P(T) / Q(T)`` from coefficient lists, with ``Q(0) = 1``."""

    P: Tuple[MultiPoly, ...]
    Q: Tuple[MultiPoly, ...]

    def __init__(self, P, Q):
        P, Q = list(_polys(P)), list(_polys(Q))
        if not Q or Q[0] != 1:
            raise PreconditionViolation("the denominator must satisfy Q(0) = 1")
        while len(P) > 1 and not P[-1]:
            P.pop()
        while len(Q) > 1 and not Q[-1]:
            Q.pop()
        object.__setattr__(self, "P", tuple(P))
        object.__setattr__(self, "Q", tuple(Q))

    @property
    def ring(self):
        return _ring(self.P + self.Q)

    def describe(self):
        return "ratio num=" + ",".join(map(str, self.P)) + " den=" + ",".join(map(str, self.Q))

    def default_genus_cap(self):
        return max(len(self.P), len(self.Q) - 1) - 1

    def _alphas(self, upto):
        return list(TruncSeries.from_rational(self.P, self.Q, upto).coeffs)


@dataclass(frozen=True)
class FreeSequence(TheorySpec):
    """Every ``alpha_g`` is an independent indeterminate ``a<g>``."""

    prefix: str = "a"

    @property
    def ring(self):
        return ()

    def describe(self):
        return "free"

    def default_genus_cap(self):
        raise PreconditionViolation("the free theory needs an explicit genus cap")

    def _alphas(self, upto):
        return [MultiPoly.var(f"{self.prefix}{g}") for g in range(upto + 1)]


def alpha_coeffs(spec: TheorySpec, upto: int) -> List[MultiPoly]:
    """Closed-surface values ``alpha_0 .. alpha_upto``."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    return list(_alpha_cached(spec, upto))


@lru_cache(maxsize=256)
def _alpha_cached(spec, upto):
    return spec._alphas(upto)


# ---------------------------------------------------------------------------
# text form


_ITEM = re.compile(r"(\w+)=(\S*)")


def _split_items(text: str) -> List[str]:
    items = [t.strip() for t in text.split(",")]
    if any(not t for t in items):
        raise ParseError(f"empty entry in {text!r}", token=text)
    return items


def parse_theory(text: str) -> TheorySpec:
    """Parse ``const beta``, ``poly 3,0,1``, ``seq 1,2,3[,...]``,
    ``rational beta=b1,b2 gamma=g1,g2``, ``ratio num=b den=1,-g`` or ``free``."""
    text = text.strip()
    head, _, rest = text.partition(" ")
    rest = rest.strip()
    try:
        if head == "const":
            return PolynomialGF([parse_poly(rest)])
        if head == "poly":
            return PolynomialGF([parse_poly(t) for t in _split_items(rest)])
        if head == "seq":
            items = _split_items(rest)
            open_ended = items[-1] == "..."
            if open_ended:
                items = items[:-1]
            return ExplicitSequence([parse_poly(t) for t in items], zero_extended=not open_ended)
        if head == "free":
            return FreeSequence()
        if head in ("rational", "ratio"):
            fields: Dict[str, List[MultiPoly]] = {}
            pos = 0
            for m in _ITEM.finditer(rest):
                if rest[pos:m.start()].strip():
                    raise ParseError(f"unexpected text {rest[pos:m.start()]!r}", token=rest[pos:m.start()])
                fields[m.group(1)] = [parse_poly(t) for t in _split_items(m.group(2))] if m.group(2) else []
                pos = m.end()
            if rest[pos:].strip():
                raise ParseError(f"unexpected text {rest[pos:]!r}", token=rest[pos:])
            allowed = {"beta", "gamma"} if head == "rational" else {"num", "den"}
            bad = set(fields) - allowed
            if bad:
                tok = sorted(bad)[0]
                raise ParseError(f"unknown field {tok!r}", token=tok)
            if head == "rational":
                return RationalByRoots(fields.get("beta", []), fields.get("gamma", []))
            return RationalByCoeffs(fields.get("num", [1]), fields.get("den", [1]))
    except PreconditionViolation as exc:
        raise ParseError(str(exc), token=text) from None
    raise ParseError(f"unknown theory kind {head!r}", token=head)


# ---------------------------------------------------------------------------
# Hankel windows and Schur determinants


def hankel_window(alphas: Sequence[PolyLike], start: int, size: int) -> PolyMatrix:
    """Gram matrix of ``x^start .. x^(start+size-1)``: entries ``alpha_{2k+i+j}``."""
    need = 2 * (start + size - 1)
    if size and len(alphas) <= need:
        raise InsufficientPrefix(f"window needs alpha_{need}, have {len(alphas)} values")
    a = _polys(alphas)
    return PolyMatrix([[a[2 * start + i + j] for j in range(size)] for i in range(size)])


def gram_det_schur_check(k: int, N: int, m_vars: Optional[int] = None) -> bool:
    """Hankel determinant of ``h_{2k} ..`` against ``(-1)^{N(N-1)/2} s_lam(h)``
    with ``lam = ((N + 2k - 1)^N)``.

    By default the ``h_i`` are free commuting variables (``h_0 = 1``); with
    ``m_vars`` they are the complete symmetric polynomials in that many
    variables.
    """
    if m_vars is None:
        hv = lambda i: MultiPoly.const(1) if i == 0 else (MultiPoly.var(f"h{i}") if i > 0 else MultiPoly.const(0))
    else:
        xs = [f"x{i}" for i in range(1, m_vars + 1)]
        hv = lambda i: complete(i, xs)
    alphas = [hv(i) for i in range(2 * (k + N - 1) + 1)]
    lhs = det_fraction_free(hankel_window(alphas, k, N))
    lam = Partition(tuple([N + 2 * k - 1] * N)) if N + 2 * k - 1 > 0 else Partition()
    rhs = jacobi_trudi(lam, hv) * (-1) ** (N * (N - 1) // 2)
    return lhs == rhs


@dataclass(frozen=True)
class CircleStateSpace:
    M: int
    N: int
    K: int
    relation: MultiPoly
    basis_degrees: Tuple[int, ...]
    recurrence_checked_upto: int


def circle_state_space(M: int, N: int, check_upto: Optional[int] = None) -> CircleStateSpace:
    """Spanning set ``1, x, .., x^(K-1)`` and the relation ``r_{M,N}`` for
    ``prod(1 + b_i T) / prod(1 - g_j T)``.

    The relation is written in ``x`` and ``eb1 .. ebM`` (the elementary
    symmetric functions of the g's).  The Hankel column recurrence behind it
    is checked on symbolic roots for ``n = K .. check_upto``
    (default ``K + 3``); a failure raises ``AssertionError``.
    """
    if M < 0 or N < 0 or (M == 0 and N == 0):
        raise PreconditionViolation("need M, N >= 0, not both zero")
    K = max(N + 1, M)
    names = ("x",) + tuple(f"eb{i}" for i in range(1, M + 1))
    x = MultiPoly.var("x", names)
    rel = MultiPoly.const(0, names)
    for i in range(M + 1):
        coeff = MultiPoly.const(1, names) if i == 0 else MultiPoly.var(f"eb{i}", names)
        rel = rel + coeff * x ** (M - i) * (-1) ** i
    rel = rel * x ** (K - M)
    upto = K + 3 if check_upto is None else check_upto
    if not verify_hankel_recurrence(M, N, K, upto):
        raise AssertionError(f"Hankel recurrence failed for M={M}, N={N}")
    return CircleStateSpace(M, N, K, rel, tuple(range(K)), upto)


def verify_hankel_recurrence(M: int, N: int, lo: int, hi: int) -> bool:
    """``sum_i (-1)^i e_i(g) alpha_{n-i} == 0`` for ``lo <= n <= hi`` on symbolic roots."""
    spec = RationalByRoots.symbolic(M, N)
    alphas = alpha_coeffs(spec, hi)
    gs = [f"g{j}" for j in range(1, M + 1)]
    ebar = [elementary(i, gs) for i in range(M + 1)]
    for n in range(lo, hi + 1):
        acc = MultiPoly.const(0)
        for i in range(M + 1):
            if n - i >= 0:
                acc = acc + ebar[i] * alphas[n - i] * (-1) ** i
        if acc != 0:
            return False
    return True


def super_hankel_det(K: int, M: int, N: int) -> MultiPoly:
    """``(-1)^{K(K-1)/2} det`` of the K x K Hankel matrix of ``h_n(g/b)``."""
    if K != max(N + 1, M):
        raise PreconditionViolation(f"K must be max(N+1, M) = {max(N + 1, M)}")
    spec = RationalByRoots.symbolic(M, N)
    alphas = alpha_coeffs(spec, 2 * K - 2)
    d = det_fraction_free(hankel_window(alphas, 0, K))
    return d * (-1) ** (K * (K - 1) // 2)


def super_hankel_case_formula(M: int, N: int) -> MultiPoly:
    """Closed form of :func:`super_hankel_det`: a power of the g- or
    b-product times ``prod(b_i + g_j)``."""
    gs = [MultiPoly.var(f"g{j}") for j in range(1, M + 1)]
    bs = [MultiPoly.var(f"b{i}") for i in range(1, N + 1)]
    out = MultiPoly.const(1)
    if N < M:
        for g in gs:
            out = out * g ** (M - N - 1)
    else:
        for b in bs:
            out = out * b ** (N + 1 - M)
    for b in bs:
        for g in gs:
            out = out * (b + g)
    return out


# ---------------------------------------------------------------------------
# rational detection


@dataclass(frozen=True)
class RecurrenceFit:
    order: int
    taps: Tuple[Fraction, ...]
    valid_from: int
    reconstructed_P: Tuple[Fraction, ...]
    reconstructed_Q: Tuple[Fraction, ...]
    linear_complexity: int = 0


def _berlekamp_massey(s: Sequence[Fraction]) -> Tuple[List[Fraction], int]:
    """Shortest connection polynomial ``C`` (``C[0] = 1``) and complexity ``L``."""
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [Fraction(0)] * (need - len(C))
        for i, bi in enumerate(B):
            C[i + m] -= coef * bi
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C, L


def detect_rational(prefix: Sequence[object]) -> Optional[RecurrenceFit]:
    """Fit the shortest eventually-linear recurrence to a numeric prefix.

    Accepts order ``N`` only when at least ``2N + 2`` samples follow the
    point where the recurrence starts and the linear complexity stays at
    most ``len // 2 - 1``.  Returns ``None`` when nothing that short fits.
    """
    s = [Fraction(v.constant_value()) if isinstance(v, MultiPoly) else Fraction(v) for v in prefix]
    if len(s) < 4:
        raise PrefixTooShort(f"need at least 4 terms, got {len(s)}")
    C, L = _berlekamp_massey(s)
    order = len(C) - 1
    valid_from = L - order
    if L > len(s) // 2 - 1 or len(s) - valid_from < 2 * order + 2:
        return None
    taps = tuple(-C[order - i] for i in range(order))
    P = []
    for j in range(L):
        P.append(sum((C[i] * s[j - i] for i in range(min(j, order) + 1)), Fraction(0)))
    while P and P[-1] == 0:
        P.pop()
    if not P:
        P = [Fraction(0)]
    # the reconstruction must reproduce the whole prefix
    series = TruncSeries.from_rational(P, C, len(s) - 1)
    if [c.constant_value() if c else 0 for c in series.coeffs] != s:
        return None
    return RecurrenceFit(order, taps, valid_from, tuple(P), tuple(C), L)


# ---------------------------------------------------------------------------
# rank-two Frobenius extension with deformed trace


@dataclass(frozen=True)
class LocalizedSeries:
    """Coefficients ``numerators[g] / rho ** exponents[g]``."""

    numerators: Tuple[MultiPoly, ...]
    exponents: Tuple[int, ...]
    rho: MultiPoly
    E1: MultiPoly
    E2: MultiPoly
    D: MultiPoly

    def cleared(self) -> Tuple[TruncSeries, int]:
        """Series multiplied by ``rho ** E`` so that every coefficient is a polynomial."""
        E = max(self.exponents, default=0)
        coeffs = [n * self.rho ** (E - e) for n, e in zip(self.numerators, self.exponents)]
        return TruncSeries(coeffs), E

    def coefficient(self, g: int) -> MultiPoly:
        """Coefficient of ``T^g``; raises when ``rho`` does not divide the numerator."""
        return self.numerators[g].exact_divide(self.rho ** self.exponents[g])


def frobenius_rank2_series(upto: int, *, rho0: PolyLike = "rho0", rho1: PolyLike = "rho1",
                           u1: PolyLike = "u1", u2: PolyLike = "u2") -> LocalizedSeries:
    """Closed-surface values of the rank-two extension ``R[X]/((X-u1)(X-u2))``
    with trace ``eps(1) = rho0``, ``eps(X) = rho1``.

    ``E1 = u1 + u2`` and ``E2 = u1 u2``; the values live in the localization
    at ``rho = -(rho1 - u1 rho0)(rho1 - u2 rho0)``.
    """
    r0, r1, a1, a2 = (_poly(v) for v in (rho0, rho1, u1, u2))
    a = r1 - r0 * a1
    b = r1 - r0 * a2
    rho = -(a * b)
    nums = [r0]
    exps = [0]
    for g in range(1, upto + 1):
        nums.append((a1 - a2) ** (g - 1) * (b ** (g - 1) + a ** (g - 1) * (-1) ** (g - 1)))
        exps.append(g - 1)
    D = (a1 - a2) ** 2
    return LocalizedSeries(tuple(nums), tuple(exps), rho, a1 + a2, a1 * a2, D)


def frobenius_closed_form(upto: int, *, rho0: PolyLike = "rho0", rho1: PolyLike = "rho1",
                          u1: PolyLike = "u1", u2: PolyLike = "u2") -> Tuple[TruncSeries, MultiPoly]:
    """``(numerator, denominator)`` of the closed-form generating function as
    polynomial coefficient lists in T, returned as ``(N(T) series, rho)`` where
    ``Z(T) * (rho - rho0 D T + D T^2) = rho0 rho + (2 rho - rho0^2 D) T``."""
    r0, r1, a1, a2 = (_poly(v) for v in (rho0, rho1, u1, u2))
    rho = -((r1 - r0 * a1) * (r1 - r0 * a2))
    D = (a1 - a2) ** 2
    num = TruncSeries([r0 * rho, rho * 2 - r0 ** 2 * D], upto)
    den = TruncSeries([rho, -(r0 * D), D], upto)
    return num, den


# ---------------------------------------------------------------------------
# polynomial generating functions: dual bases and neck cutting


def dual_basis(coeffs: Sequence[PolyLike], var: str = "x") -> List[MultiPoly]:
    """Dual basis to ``1, x, .., x^N`` under ``eps(x^n) = alpha_n`` for the
    polynomial ``Z = alpha_0 + .. + alpha_N T^N``.

    ``alpha_N`` must be a nonzero rational; entry ``j`` of the result is the
    dual of ``x^j``.
    """
    a = list(_polys(coeffs))
    N = len(a) - 1
    if not a[N] or not a[N].is_constant():
        raise PreconditionViolation("leading coefficient must be a nonzero rational")
    lead = Fraction(a[N].constant_value())
    vars = _union_vars(_ring(a), (var,))
    x = MultiPoly.var(var, vars)
    alpha = lambda n: a[n] if n <= N else MultiPoly.const(0)
    out = []
    for j in range(N + 1):
        c: Dict[int, MultiPoly] = {}
        for r in range(N, -1, -1):
            acc = MultiPoly.const(1 if r == j else 0, vars)
            for i in range(N - r):
                acc = acc - alpha(r + i) * c[i]
            c[N - r] = acc / lead
        d = MultiPoly.const(0, vars)
        for i in range(N + 1):
            d = d + c[i] * x ** i
        out.append(d.embed(vars))
    return out


def trace_poly(p: MultiPoly, coeffs: Sequence[PolyLike], var: str = "x") -> MultiPoly:
    """``eps`` of a polynomial in ``x``: replace ``x^n`` by ``alpha_n``."""
    a = list(_polys(coeffs))
    acc = MultiPoly.const(0)
    for n, c in p.coefficients_in(var).items():
        if n < len(a):
            acc = acc + c.subs({var: 0}) * a[n]
    return acc


def neck_cutting_defect(coeffs: Sequence[PolyLike], var: str = "x") -> MultiPoly:
    """Tube closure of ``tube - sum_i x^i (disjoint) dual_i``.

    The tube closes to a torus (``alpha_1``) and each ``x^i``, ``dual_i`` pair
    joins into one surface, so the value is ``alpha_1 - sum_i eps(x^i dual_i)``;
    zero is necessary for a neck-cutting relation.
    """
    a = list(_polys(coeffs))
    duals = dual_basis(a, var)
    x = MultiPoly.var(var, duals[0].vars)
    alpha1 = a[1] if len(a) > 1 else MultiPoly.const(0)
    total = MultiPoly.const(0)
    for i, d in enumerate(duals):
        total = total + trace_poly(x ** i * d, a, var)
    return alpha1 - total
