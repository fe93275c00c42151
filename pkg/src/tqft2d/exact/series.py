"""Truncated power series with polynomial coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .poly import MultiPoly, _union_vars


def _as_poly(c, vars=()) -> MultiPoly:
    return c if isinstance(c, MultiPoly) else MultiPoly.const(c, vars)


class TruncSeries:
    """``sum_{i <= order} c_i T^i``; arithmetic never reads past ``order``."""

    __slots__ = ("variable", "order", "coeffs")

    def __init__(self, coeffs: Sequence[object], order: int | None = None, variable: str = "T"):
        order = len(coeffs) - 1 if order is None else order
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        vars: tuple = ()
        for c in coeffs:
            if isinstance(c, MultiPoly):
                vars = _union_vars(vars, c.vars)
        cs = [_as_poly(c, vars).embed(vars) for c in list(coeffs)[: order + 1]]
        cs += [MultiPoly.const(0, vars)] * (order + 1 - len(cs))
        self.variable = variable
        self.order = order
        self.coeffs: List[MultiPoly] = cs

    @property
    def vars(self):
        return self.coeffs[0].vars

    def __getitem__(self, i: int) -> MultiPoly:
        if i > self.order:
            raise IndexError(f"coefficient {i} is beyond the truncation order {self.order}")
        return self.coeffs[i]

    def __len__(self):
        return self.order + 1

    def _align(self, other: "TruncSeries"):
        n = min(self.order, other.order)
        return n, self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries([other], self.order, self.variable)
        n, a, b = self._align(other)
        return TruncSeries([x + y for x, y in zip(a, b)], n, self.variable)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order, self.variable)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.variable)
        n, a, b = self._align(other)
        out = []
        for k in range(n + 1):
            acc = MultiPoly.const(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncSeries(out, n, self.variable)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self.coeffs[0]
        if not c0.is_constant() or not c0:
            raise ZeroDivisionError("constant term is not an invertible scalar")
        inv0 = Fraction(1) / Fraction(c0.constant_value())
        out = [MultiPoly.const(inv0, self.vars)]
        for k in range(1, self.order + 1):
            acc = MultiPoly.const(0, self.vars)
            for i in range(1, k + 1):
                if self.coeffs[i]:
                    acc = acc + self.coeffs[i] * out[k - i]
            out.append(acc * (-inv0))
        return TruncSeries(out, self.order, self.variable)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return self * other.inverse()

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1], min(order, self.order), self.variable)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"TruncSeries({[str(c) for c in self.coeffs]!r})"

    @classmethod
    def from_rational(cls, num: Sequence[object], den: Sequence[object], order: int, variable: str = "T"):
        """Expand ``P(T)/Q(T)`` given coefficient lists of P and Q."""
        return cls(list(num), order, variable) / cls(list(den), order, variable)
