import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tqft2d.day import (
    LaurentWindow, RationalFnSpec, day_verify, laurent_coeffs, random_instance, reconvolve,
    toeplitz_det,
)
from tqft2d.errors import InsufficientWindow, RepeatedRoot
from tqft2d.foam import DayFoamInstance


def mpq(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def contour_laurent(spec: RationalFnSpec, n: int, points: int = 512):
    """Oracle: a_nu as a trapezoid-rule contour integral on a circle inside the annulus."""
    mpmath.mp.dps = 60
    inner = max((abs(d) for d in spec.delta), default=Fraction(0))
    outer = min((abs(p) for p in spec.rho), default=None)
    radius = mpmath.sqrt(mpq(inner) * mpq(outer)) if inner and outer else (
        mpq(outer) / 2 if outer else mpq(inner) + 1)

    def f(z):
        val = mpmath.mpf(1)
        for r in spec.g_roots:
            val *= z - mpq(r)
        for d in spec.delta:
            val /= z - mpq(d)
        for p in spec.rho:
            val /= 1 - z / mpq(p)
        return val

    samples = [radius * mpmath.expj(2 * mpmath.pi * s / points) for s in range(points)]
    values = [f(z) for z in samples]
    return {nu: sum(v * z ** (-nu) for v, z in zip(values, samples)) / points for nu in range(-n, n + 1)}


def test_polynomial_window():
    w = laurent_coeffs(RationalFnSpec([3]), 3)
    assert w[1] == 1 and w[0] == -3
    assert all(w[nu] == 0 for nu in range(-3, 4) if nu not in (0, 1))


def test_simple_pole_window():
    w = laurent_coeffs(RationalFnSpec([], [Fraction(1, 2)]), 3)
    for nu in range(0, 3):
        assert w[-nu - 1] == Fraction(1, 2) ** nu
    assert all(w[nu] == 0 for nu in range(0, 4))


@pytest.mark.parametrize("seed", range(6))
def test_window_against_series_oracle(seed):
    inst = random_instance(random.Random(seed), max_n=3)
    spec = RationalFnSpec.of(inst)
    w = laurent_coeffs(spec, 3)
    approx = contour_laurent(spec, 3)
    for nu in range(-3, 4):
        assert abs(approx[nu] - mpq(w[nu])) < mpmath.mpf(10) ** -25


def test_repeated_poles_rejected():
    with pytest.raises(RepeatedRoot):
        RationalFnSpec([1], [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(RepeatedRoot):
        RationalFnSpec([1], [], [3, 3])


def test_toeplitz_examples():
    w = LaurentWindow(-3, 3, {nu: (Fraction(5) if nu == 0 else Fraction(0)) for nu in range(-3, 4)})
    assert toeplitz_det(w, 3) == 5 ** 4
    w = laurent_coeffs(RationalFnSpec([Fraction(2, 3)]), 2)
    assert toeplitz_det(w, 2) == Fraction(-2, 3) ** 3
    with pytest.raises(InsufficientWindow):
        toeplitz_det(w, 3)


def test_toeplitz_against_sympy_det():
    inst = DayFoamInstance([1, 2, -3], [Fraction(1, 2)], [4], 4)
    w = laurent_coeffs(RationalFnSpec.of(inst), 4)
    mat = sympy.Matrix(5, 5, lambda i, j: sympy.Rational(str(w[i - j])))
    assert toeplitz_det(w, 4) == Fraction(str(mat.det()))


def test_day_examples():
    assert day_verify(DayFoamInstance([5], [], [], 0)).equal
    for n in range(5):
        v = day_verify(DayFoamInstance([1, 2], [Fraction(1, 2)], [3], n))
        assert v.equal and v.formula_value == v.brute_force_value


def test_day_random_sweep():
    rng = random.Random(2024)
    results = [day_verify(random_instance(rng)) for _ in range(40)]
    assert all(r.equal for r in results)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_reconvolution_reproduces_numerator(seed):
    inst = random_instance(random.Random(seed))
    spec = RationalFnSpec.of(inst)
    w = laurent_coeffs(spec, inst.n + 6)
    G = spec.G()
    for mu, c in reconvolve(w, spec).items():
        expected = G[mu] if 0 <= mu < len(G) else 0
        assert c == expected


@given(st.integers(0, 10_000), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_toeplitz_stable_under_larger_window(seed, extra):
    inst = random_instance(random.Random(seed))
    spec = RationalFnSpec.of(inst)
    a = toeplitz_det(laurent_coeffs(spec, inst.n), inst.n)
    b = toeplitz_det(laurent_coeffs(spec, inst.n + extra), inst.n)
    assert a == b
