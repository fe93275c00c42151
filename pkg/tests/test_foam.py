import random
from fractions import Fraction
from itertools import permutations

import pytest
import sympy

from tqft2d.errors import DegenerateInstance, HookViolation, PreconditionViolation, SizeLimit
from tqft2d.exact import MultiPoly, parse_poly
from tqft2d.foam import (
    DayFoamInstance, OverlapThetaFoam, ThetaFoam, day_foam_colorings, day_foam_eval,
    monic_from_roots_coeffs, overlap_theta_eval, sphere_overlap_eval, sylvester_matrix,
    sylvester_resultant, theta_eval,
)
from tqft2d.symfun import (
    Partition, fits_hook, partitions_of, schur_jt, sergeev_pragacz, super_schur_jt,
)


def xs(M):
    return [f"x{i}" for i in range(1, M + 1)]


def ys(N):
    return [f"y{j}" for j in range(1, N + 1)]


def test_theta_examples():
    assert theta_eval(ThetaFoam(2, Partition.of(1))) == parse_poly("x1+x2")
    assert theta_eval(ThetaFoam(3, Partition.of(2, 2, 2))) == parse_poly("x1^2*x2^2*x3^2")
    assert str(theta_eval(ThetaFoam(2, Partition.of(2, 1)))) == "x1^2*x2+x1*x2^2"
    assert ThetaFoam(3, Partition.of(2)).dots == (4, 1, 0)
    with pytest.raises(SizeLimit):
        theta_eval(ThetaFoam(7, Partition.of(1)))
    with pytest.raises(PreconditionViolation):
        ThetaFoam(1, Partition.of(1, 1))


@pytest.mark.parametrize("M", [1, 2, 3, 4])
def test_theta_equals_jacobi_trudi(M):
    for n in range(7):
        for mu in partitions_of(n):
            if mu.length() <= M:
                assert theta_eval(ThetaFoam(M, mu)) == schur_jt(mu, xs(M))


def test_overlap_examples():
    f = OverlapThetaFoam(1, 1, Partition.of(2, 1))
    assert overlap_theta_eval(f) == parse_poly("x1*y1*(x1+y1)")
    rect = OverlapThetaFoam(2, 3, Partition.of(3, 3))
    prod = MultiPoly.const(1)
    for x in xs(2):
        for y in ys(3):
            prod = prod * (MultiPoly.var(x) + MultiPoly.var(y))
    assert overlap_theta_eval(rect) == prod
    with pytest.raises(HookViolation):
        OverlapThetaFoam(1, 1, Partition.of(2, 2))


@pytest.mark.parametrize("M,N", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2), (3, 3)])
def test_overlap_equals_supersymmetric_schur(M, N):
    for n in range(9):
        for lam in partitions_of(n):
            if not fits_hook(lam, M, N):
                continue
            got = overlap_theta_eval(OverlapThetaFoam(M, N, lam))
            assert got == super_schur_jt(lam, xs(M), ys(N))
            assert got == sergeev_pragacz(lam, xs(M), ys(N))


def test_large_overlap_instance_at_points():
    f = OverlapThetaFoam(4, 6, Partition.of(9, 7, 3, 2, 2, 2, 1))
    assert f.x_dots == (6, 3, 1, 0)
    assert f.y_dots == (8, 6, 3, 2, 1, 0)
    assert len(f.kappa_pattern) == 6 + 6 + 3 + 2
    with pytest.raises(SizeLimit):
        overlap_theta_eval(f)
    rng = random.Random(7)
    for _ in range(2):
        pt = {v: Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for v in xs(4) + ys(6)}
        while len(set(pt.values())) < 10:
            pt = {v: Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for v in xs(4) + ys(6)}
        assert overlap_theta_eval(f, at=pt) == super_schur_jt(f.lam, xs(4), ys(6), at=pt)


def test_sphere_examples():
    assert sphere_overlap_eval(1, 1, "plus") == parse_poly("x1+y1")
    assert sphere_overlap_eval(2, 1, "minus") == parse_poly("(x1-y1)*(x2-y1)")


def test_sylvester_examples():
    a, b = MultiPoly.var("a"), MultiPoly.var("b")
    assert sylvester_resultant([1, -a], [1, -b]) == a - b
    u, v, w = (MultiPoly.var(n) for n in "uvw")
    assert sylvester_resultant([1, -(u + v), u * v], [1, -w]) == (u - w) * (v - w)


def sympy_resultant(M, N):
    """Oracle: determinant of sympy's Sylvester matrix of the two root polynomials."""
    from sympy.polys.subresultants_qq_zz import sylvester

    t = sympy.Symbol("t")
    X = sympy.symbols(xs(M))
    Y = sympy.symbols(ys(N))
    f = sympy.prod([t - x for x in X])
    g = sympy.prod([t - y for y in Y])
    return sympy.expand(sylvester(sympy.expand(f), sympy.expand(g), t).det())


@pytest.mark.parametrize("M,N", [(1, 1), (2, 1), (1, 3), (2, 2), (3, 2), (3, 3), (4, 2), (4, 4)])
def test_sphere_minus_is_resultant(M, N):
    # determinant over generic coefficients, then specialize to elementary symmetric functions
    a = [MultiPoly.const(1)] + [MultiPoly.var(f"a{i}") for i in range(1, M + 1)]
    b = [MultiPoly.const(1)] + [MultiPoly.var(f"b{j}") for j in range(1, N + 1)]
    generic = sylvester_resultant(a, b)
    fx = monic_from_roots_coeffs(xs(M))
    gy = monic_from_roots_coeffs(ys(N))
    mapping = {f"a{i}": fx[i] for i in range(1, M + 1)}
    mapping.update({f"b{j}": gy[j] for j in range(1, N + 1)})
    res = generic.subs(mapping)
    sphere = sphere_overlap_eval(M, N, "minus")
    assert res == sphere
    if M + N <= 5:
        expected = sympy_resultant(M, N)
        assert sphere == parse_poly(str(expected).replace("**", "^"))


def test_sylvester_shape():
    m = sylvester_matrix([1, 2, 3], [1, 5])
    assert m.shape == (3, 3)
    assert m.render() == [["1", "2", "3"], ["1", "5", "0"], ["0", "1", "5"]]


def test_day_trivial_family():
    for n in range(9):
        for r in (Fraction(2), Fraction(-1, 3)):
            inst = DayFoamInstance([r], [], [], n)
            assert day_foam_eval(inst) == (-r) ** (n + 1)


def test_day_sign_relation():
    inst = DayFoamInstance([1, 2, 5], [Fraction(1, 2)], [3, 4], 3)
    assert day_foam_eval(inst) == (-1) ** (inst.m * inst.n) * day_foam_colorings(inst)


def test_day_preconditions():
    with pytest.raises(PreconditionViolation):
        DayFoamInstance([1], [], [3, 4], 2)  # m < h
    with pytest.raises(PreconditionViolation):
        DayFoamInstance([1, 2], [5], [3], 2)  # annulus
    with pytest.raises(DegenerateInstance):
        DayFoamInstance([1, 1], [], [], 2)
    with pytest.raises(DegenerateInstance):
        DayFoamInstance([3, 2], [], [3], 2)


@pytest.mark.parametrize("M,N", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)])
def test_resultant_of_roots_matches_direct_elimination(M, N):
    from tqft2d.foam import resultant_of_roots
    direct = sylvester_resultant(monic_from_roots_coeffs(xs(M)), monic_from_roots_coeffs(ys(N)))
    assert resultant_of_roots(xs(M), ys(N)) == direct
