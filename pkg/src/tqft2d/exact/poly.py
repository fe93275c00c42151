"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` is a map from exponent tuples to coefficients over an
ordered tuple of variable names.  Coefficients are Python ints whenever
possible and :class:`fractions.Fraction` otherwise, so integer polynomials
never pay for rational arithmetic.

Monomials are compared in graded lexicographic order with respect to the
variable tuple; this order fixes the canonical text rendering and the
leading terms used by exact division.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from ..errors import NonExactDivision, ParseError

Exponent = Tuple[int, ...]
Terms = Dict[Exponent, Union[int, Fraction]]
Scalar = Union[int, Fraction]


def Rational(numerator, denominator=1) -> Scalar:
    """Build an exact rational, collapsing integral values to ``int``."""
    return norm_coeff(Fraction(numerator, denominator))


def norm_coeff(c) -> Scalar:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, _RationalABC):
        return norm_coeff(Fraction(c.numerator, c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


def parse_rational(text: str) -> Scalar:
    text = text.strip()
    try:
        return norm_coeff(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", token=text) from None


def grlex_key(e: Exponent):
    return (sum(e), e)


# ---------------------------------------------------------------------------
# raw term-dict kernels (no variable bookkeeping); used by linalg hot loops


def _div_coeff(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return norm_coeff(Fraction(a) / b)


def t_add(a: Terms, b: Terms, sign: int = 1) -> Terms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + (c if sign == 1 else -c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def t_mul(a: Terms, b: Terms) -> Terms:
    if not a or not b:
        return {}
    if len(a) == 1 and len(b) == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        return {tuple(x + y for x, y in zip(ea, eb)): ca * cb}
    if len(b) > len(a):
        a, b = b, a
    out: Terms = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def t_scale(a: Terms, c: Scalar) -> Terms:
    if not c:
        return {}
    return {e: norm_coeff(v * c) for e, v in a.items()}


def t_divexact(a: Terms, b: Terms) -> Terms:
    """Exact quotient ``a / b``; raises :class:`NonExactDivision` otherwise."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        out = {}
        for ea, ca in a.items():
            e = tuple(x - y for x, y in zip(ea, eb))
            if min(e, default=0) < 0:
                raise NonExactDivision("monomial divisor does not divide")
            out[e] = _div_coeff(ca, cb)
        return out
    lead_b = max(b, key=grlex_key)
    lc_b = b[lead_b]
    rem = dict(a)
    quot: Terms = {}
    while rem:
        lead = max(rem, key=grlex_key)
        e = tuple(x - y for x, y in zip(lead, lead_b))
        if min(e, default=0) < 0:
            raise NonExactDivision("nonzero remainder in exact division")
        c = _div_coeff(rem[lead], lc_b)
        quot[e] = c
        for eb, cb in b.items():
            m = tuple(x + y for x, y in zip(e, eb))
            v = rem.get(m, 0) - c * cb
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return quot


def t_pow(a: Terms, n: int, nvars: int) -> Terms:
    result: Terms = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            result = t_mul(result, base)
        n >>= 1
        if n:
            base = t_mul(base, base)
    return result


# ---------------------------------------------------------------------------


def _union_vars(a: Sequence[str], b: Sequence[str]) -> Tuple[str, ...]:
    seen = set(a)
    return tuple(a) + tuple(v for v in b if v not in seen)


class MultiPoly:
    """Immutable sparse polynomial over an ordered tuple of variables.

    Binary operations between polynomials over different variable tuples
    first embed both operands into the union tuple (left operand's variables
    first), so ``x + y`` lives over ``("x", "y")``.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[Exponent, Scalar] | None = None):
        self.vars: Tuple[str, ...] = tuple(vars)
        n = len(self.vars)
        clean: Terms = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                c = norm_coeff(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Terms) -> "MultiPoly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, vars: Iterable[str] = ()) -> "MultiPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Iterable[str] | None = None) -> "MultiPoly":
        vars = (name,) if vars is None else tuple(vars)
        if name not in vars:
            vars = vars + (name,)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1, vars: Iterable[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else tuple(powers)
        vars = _union_vars(vars, powers)
        e = tuple(powers.get(v, 0) for v in vars)
        return cls(vars, {e: coeff})

    # -- coercion -----------------------------------------------------------

    def embed(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars``, which must contain every variable used."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        n = len(vars)
        used = self.used_vars()
        missing = [v for v in used if v not in pos]
        if missing:
            raise ValueError(f"variables {missing} not in target list {vars}")
        idx = [pos.get(v) for v in self.vars]
        out: Terms = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(vars, out)

    def used_vars(self) -> Tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def trim(self) -> "MultiPoly":
        """Drop variables that do not occur."""
        return self.embed(self.used_vars())

    def _coerce(self, other) -> Tuple["MultiPoly", "MultiPoly"]:
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self, other
            vars = _union_vars(self.vars, other.vars)
            return self.embed(vars), other.embed(vars)
        if isinstance(other, (int, Fraction)) or isinstance(other, _RationalABC):
            return self, MultiPoly.const(other, self.vars)
        return NotImplemented, NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return MultiPoly._raw(a.vars, t_add(a.terms, b.terms))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return MultiPoly._raw(a.vars, t_add(a.terms, b.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly._raw(self.vars, t_scale(self.terms, norm_coeff(other)))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return MultiPoly._raw(a.vars, t_mul(a.terms, b.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        return MultiPoly._raw(self.vars, t_pow(self.terms, n, len(self.vars)))

    def __truediv__(self, other):
        """Division by a nonzero scalar only; use :meth:`exact_divide` for polynomials."""
        if isinstance(other, (int, Fraction)):
            return MultiPoly._raw(self.vars, t_scale(self.terms, Fraction(1) / norm_coeff(other)))
        return NotImplemented

    def exact_divide(self, other) -> "MultiPoly":
        a, b = self._coerce(other)
        if a is NotImplemented:
            raise TypeError(f"cannot divide by {other!r}")
        return MultiPoly._raw(a.vars, t_divexact(a.terms, b.terms))

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coeff(self, powers: Mapping[str, int]) -> Scalar:
        if any(v not in self.vars for v, k in powers.items() if k):
            return 0
        e = tuple(powers.get(v, 0) for v in self.vars)
        return self.terms.get(e, 0)

    def coefficients_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """Split as ``sum_k c_k * var**k``; coefficients keep the full variable tuple."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        out: Dict[int, Terms] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: MultiPoly._raw(self.vars, t) for k, t in out.items()}

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        from math import gcd, lcm
        num = 0
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            num = gcd(num, f.numerator)
            den = lcm(den, f.denominator)
        return Fraction(num, den) if num else Fraction(0)

    # -- substitution -------------------------------------------------------

    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials or rationals for variables.

        Substituted variables disappear from the variable tuple unless a
        replacement polynomial mentions them again.
        """
        mapping = {k: v for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        keep = tuple(v for v in self.vars if v not in mapping)
        repl_vars = keep
        for v in mapping.values():
            if isinstance(v, MultiPoly):
                repl_vars = _union_vars(repl_vars, v.vars)
        keep_idx = [self.vars.index(v) for v in keep]
        pos = {v: i for i, v in enumerate(repl_vars)}
        n = len(repl_vars)
        repl = {}
        for name, val in mapping.items():
            if isinstance(val, MultiPoly):
                repl[self.vars.index(name)] = val.embed(repl_vars).terms
            else:
                repl[self.vars.index(name)] = {(0,) * n: norm_coeff(val)}
        power_cache: Dict[Tuple[int, int], Terms] = {}

        def power(i, k):
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = t_pow(repl[i], k, n)
            return power_cache[key]

        out: Terms = {}
        for e, c in self.terms.items():
            base = [0] * n
            for j, i in enumerate(keep_idx):
                base[pos[keep[j]]] = e[i]
            term: Terms = {tuple(base): c}
            for i in repl:
                if e[i]:
                    term = t_mul(term, power(i, e[i]))
            out = t_add(out, term)
        return MultiPoly._raw(repl_vars, out)

    def evaluate(self, point: Mapping[str, object]) -> Scalar:
        """Evaluate at a rational point covering every used variable."""
        res = self.subs(point)
        if not res.is_constant():
            raise ValueError(f"point does not fix variables {res.used_vars()}")
        return res.constant_value()

    def permute_vars(self, perm: Mapping[str, str]) -> "MultiPoly":
        """Rename variables simultaneously (e.g. swap two of them)."""
        new_vars = tuple(perm.get(v, v) for v in self.vars)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("renaming must be injective")
        renamed = MultiPoly._raw(new_vars, dict(self.terms))
        # keep the original ordering when the renaming permutes the variables
        return renamed.embed(self.vars) if set(new_vars) == set(self.vars) else renamed

    # -- comparison / hashing -------------------------------------------------

    def _canon(self):
        return frozenset(
            (tuple(sorted((v, k) for v, k in zip(self.vars, e) if k)), c) for e, c in self.terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self.terms == other.terms
            return self._canon() == other._canon()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canon())
        return self._hash

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MultiPoly({render(self)!r})"


def render(p: MultiPoly) -> str:
    """Canonical text: descending grlex terms, explicit ``*`` and ``^``.

    A coefficient of exactly 1 is omitted; every other coefficient, -1
    included, is written out, e.g. ``-1*b^2`` and ``x1^2*y1+x1*y1^2``.
    """
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[e]
        factors = []
        for v, k in zip(p.vars, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        mono = "*".join(factors)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1 and not neg:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(("-" if neg else "+") + body)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_poly(text: str, vars: Sequence[str] | None = None) -> MultiPoly:
    """Parse polynomial text such as ``"x1^2*y1-3/2*b+1"``.

    Variables are taken in order of first appearance unless ``vars`` fixes
    the tuple (extra variables found in the text are appended).  Accepts the
    canonical rendering plus parentheses and implicit-coefficient forms.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("sym", sym))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial text", token=text)
    order = list(vars) if vars is not None else []
    for kind, val in tokens:
        if kind == "var" and val not in order:
            order.append(val)
    order = tuple(order)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (expected is not None and tok[1] != expected):
            raise ParseError(f"unexpected token {tok[1]!r} in {text!r}", token=tok[1])
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() == ("sym", "-"):
            take()
            sign = -1
        elif peek() == ("sym", "+"):
            take()
        acc = term() * sign
        while peek()[1] in ("+", "-") and peek()[0] == "sym":
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == ("sym", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = peek()
        if kind == "num":
            take()
            base = MultiPoly.const(parse_rational(val), order)
        elif kind == "var":
            take()
            base = MultiPoly.var(val, order)
        elif (kind, val) == ("sym", "("):
            take()
            base = expr()
            take(")")
        elif (kind, val) == ("sym", "-"):
            take()
            return -factor()
        else:
            raise ParseError(f"unexpected token {val!r} in {text!r}", token=val)
        if peek() == ("sym", "^"):
            take()
            k, e = take()
            if k != "num" or "/" in e:
                raise ParseError(f"bad exponent {e!r}", token=e)
            base = base ** int(e)
        return base

    result = expr()
    if i != len(tokens):
        raise ParseError(f"trailing input {tokens[i][1]!r} in {text!r}", token=tokens[i][1])
    return result.embed(order)


def poly_vars(*names: str) -> Tuple[MultiPoly, ...]:
    """Generators of the polynomial ring over ``names``, in that order."""
    return tuple(MultiPoly.var(n, names) for n in names)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch ``add``, ``mul`` or ``exact_divide`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_divide":
        return a.exact_divide(b)
    raise ValueError(f"unknown operation {op!r}")
