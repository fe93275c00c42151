"""Annulus Laurent expansions of rational functions and Toeplitz determinants.

For ``f = G / (F D)`` with ``D = prod (z - delta_s)``,
``F = prod (1 - z / rho_t)`` and ``G = prod (z - r_i)``, every Laurent
coefficient in ``max|delta| < |z| < min|rho|`` is a finite sum: split off the
polynomial part, then expand each simple pole geometrically on the side of
the annulus it lies on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InsufficientWindow, PreconditionViolation, RepeatedRoot
from .exact import numeric_det
from .foam import DayFoamInstance, day_foam_eval

Poly = List[Fraction]  # coefficient list, lowest degree first

DELTA_POOL = [Fraction(s, d) for s, d in ((1, 2), (-1, 2), (1, 3), (-1, 3), (2, 5), (-2, 5))]
RHO_POOL = [Fraction(v) for v in (3, -3, 4, -4, Fraction(5, 2), Fraction(-5, 2),
                                  Fraction(7, 2), Fraction(-7, 2))]
R_POOL = [Fraction(v) for v in (1, -1, 2, -2, Fraction(3, 2), Fraction(-3, 2), Fraction(5, 3),
                                Fraction(-5, 3), Fraction(1, 4), Fraction(-3, 4), 5, -6,
                                Fraction(6, 5), Fraction(-7, 3))]


def _pmul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _from_roots(roots: Sequence[Fraction]) -> Poly:
    out = [Fraction(1)]
    for r in roots:
        out = _pmul(out, [-r, Fraction(1)])
    return out


def _peval(p: Poly, z: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * z + c
    return acc


def _pderiv(p: Poly) -> Poly:
    return [i * c for i, c in enumerate(p)][1:] or [Fraction(0)]


def _pdivmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        q[i - db] = c
        if c:
            for j, y in enumerate(b):
                a[i - db + j] -= c * y
    return q, a[:db] or [Fraction(0)]


@dataclass(frozen=True)
class RationalFnSpec:
    """``G / (F D)`` from the roots of G, D and F."""

    g_roots: Tuple[Fraction, ...]
    delta: Tuple[Fraction, ...]
    rho: Tuple[Fraction, ...]

    def __init__(self, g_roots, delta=(), rho=()):
        object.__setattr__(self, "g_roots", tuple(Fraction(v) for v in g_roots))
        object.__setattr__(self, "delta", tuple(Fraction(v) for v in delta))
        object.__setattr__(self, "rho", tuple(Fraction(v) for v in rho))
        if len(set(self.delta)) != len(self.delta) or len(set(self.rho)) != len(self.rho):
            raise RepeatedRoot("poles must be simple")
        if any(p == 0 for p in self.rho):
            raise PreconditionViolation("roots of F must be nonzero")
        if self.delta and self.rho and max(map(abs, self.delta)) >= min(map(abs, self.rho)):
            raise PreconditionViolation("annulus condition max|delta| < min|rho| fails")

    @classmethod
    def of(cls, inst: DayFoamInstance) -> "RationalFnSpec":
        return cls(inst.r, inst.delta, inst.rho)

    def G(self) -> Poly:
        return _from_roots(self.g_roots)

    def D(self) -> Poly:
        return _from_roots(self.delta)

    def F(self) -> Poly:
        out = [Fraction(1)]
        for p in self.rho:
            out = _pmul(out, [Fraction(1), -1 / p])
        return out


@dataclass(frozen=True)
class LaurentWindow:
    lo: int
    hi: int
    coeffs: Dict[int, Fraction]

    def __getitem__(self, nu: int) -> Fraction:
        if not self.lo <= nu <= self.hi:
            raise InsufficientWindow(f"a_{nu} is outside [{self.lo}, {self.hi}]")
        return self.coeffs[nu]


def laurent_coeffs(spec: RationalFnSpec, n: int) -> LaurentWindow:
    """Exact ``a_nu`` for ``-n <= nu <= n``."""
    if n < 0:
        raise PreconditionViolation("window bound must be nonnegative")
    G = spec.G()
    FD = _pmul(spec.F(), spec.D())
    FD_prime = _pderiv(FD)
    poly_part, _ = _pdivmod(G, FD)
    # residues of f at its simple poles
    inner = [(d, _peval(G, d) / _peval(FD_prime, d)) for d in spec.delta]
    outer = [(p, _peval(G, p) / _peval(FD_prime, p)) for p in spec.rho]
    coeffs: Dict[int, Fraction] = {}
    for nu in range(-n, n + 1):
        a = Fraction(0)
        if nu >= 0:
            if nu < len(poly_part):
                a += poly_part[nu]
            # 1/(z - rho) = -sum_j rho^(-j-1) z^j
            for p, res in outer:
                a -= res / p ** (nu + 1)
        else:
            # 1/(z - delta) = sum_i delta^i z^(-i-1)
            for d, res in inner:
                a += res * d ** (-nu - 1)
        coeffs[nu] = a
    return LaurentWindow(-n, n, coeffs)


def toeplitz_det(w: LaurentWindow, n: int) -> Fraction:
    """``det (a_{i-j})_{i,j=0..n}``."""
    if w.lo > -n or w.hi < n:
        raise InsufficientWindow(f"window [{w.lo}, {w.hi}] does not cover [-{n}, {n}]")
    return numeric_det([[w[i - j] for j in range(n + 1)] for i in range(n + 1)])


def reconvolve(w: LaurentWindow, spec: RationalFnSpec) -> Dict[int, Fraction]:
    """Coefficients of ``(sum a_nu z^nu) F D`` where the truncated product is exact."""
    FD = _pmul(spec.F(), spec.D())
    deg = len(FD) - 1
    return {mu: sum(FD[i] * w[mu - i] for i in range(deg + 1)) for mu in range(w.lo + deg, w.hi + 1)}


@dataclass(frozen=True)
class DayVerification:
    formula_value: Fraction
    brute_force_value: Fraction
    equal: bool


def day_verify(inst: DayFoamInstance) -> DayVerification:
    """Compare the foam/Day formula with the Toeplitz determinant."""
    formula = day_foam_eval(inst)
    brute = toeplitz_det(laurent_coeffs(RationalFnSpec.of(inst), inst.n), inst.n)
    return DayVerification(formula, brute, formula == brute)


def random_instance(rng: random.Random, max_k: int = 3, max_h: int = 3, max_m: int = 3,
                    max_n: int = 6) -> DayFoamInstance:
    """Draw an instance satisfying the formula's hypotheses.

    The root pools are disjoint and every delta is smaller than every rho,
    so only ``m >= h`` has to be arranged.
    """
    k = rng.randint(0, max_k)
    h = rng.randint(0, max_h)
    m = rng.randint(max(h, 0), max(max_m, h))
    n = rng.randint(0, max_n)
    delta = rng.sample(DELTA_POOL, k)
    rho = rng.sample(RHO_POOL, h)
    r = rng.sample(R_POOL, k + m)
    return DayFoamInstance(r, delta, rho, n)
